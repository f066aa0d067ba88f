#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "udgo/percolation.hpp"
#include "udgo/verify.hpp"

using namespace udgo;

namespace {

GridInstance figure_grid() {
  GridInstance g(5);
  for (auto [x, y] : {std::pair{1, 4}, {2, 3}, {3, 2}, {4, 4}, {5, 3}}) g.set(x, y, false);
  return g;
}

// Reachability by explicit search over up/right moves, no sweep order.
bool reachable_by_search(const GridInstance& g) {
  const int n = g.size();
  if (!g.on(1, 1)) return false;
  std::vector<std::pair<int, int>> stack{{1, 1}};
  std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    if (x == n && y == n) return true;
    for (auto [nx, ny] : {std::pair{x + 1, y}, {x, y + 1}}) {
      if (nx > n || ny > n || !g.on(nx, ny)) continue;
      auto& s = seen[static_cast<std::size_t>((ny - 1) * n + nx - 1)];
      if (!s) {
        s = 1;
        stack.emplace_back(nx, ny);
      }
    }
  }
  return false;
}

}  // namespace

TEST(GridReachable, Examples) {
  EXPECT_TRUE(grid_reachable(GridInstance(3, true)));
  GridInstance g(2);
  g.set(1, 2, false);
  g.set(2, 1, false);
  EXPECT_FALSE(grid_reachable(g));
  GridInstance corner(3);
  corner.set(3, 3, false);
  EXPECT_FALSE(grid_reachable(corner));
  GridInstance start(3);
  start.set(1, 1, false);
  EXPECT_FALSE(grid_reachable(start));
  EXPECT_TRUE(grid_reachable(GridInstance(1, true)));
  EXPECT_FALSE(grid_reachable(GridInstance(1, false)));
}

TEST(GridReachable, FigureReachableSet) {
  const GridInstance g = figure_grid();
  EXPECT_FALSE(grid_reachable(g));
  const auto reach = reachable_cells(g);
  std::set<std::pair<int, int>> got;
  for (int y = 1; y <= 5; ++y) {
    for (int x = 1; x <= 5; ++x) {
      if (reach[static_cast<std::size_t>((y - 1) * 5 + x - 1)]) got.insert({x, y});
    }
  }
  const std::set<std::pair<int, int>> expected{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1},
                                               {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2}};
  EXPECT_EQ(got, expected);
}

TEST(GridReachable, AgreesWithSearch) {
  for (int n = 1; n <= 4; ++n) {
    const int cells = n * n;
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
      GridInstance g(n);
      for (int c = 0; c < cells; ++c) g.set(c % n + 1, c / n + 1, (mask >> c & 1u) != 0);
      ASSERT_EQ(grid_reachable(g), reachable_by_search(g));
    }
  }
}

TEST(GridInstance, OutOfRange) {
  GridInstance g(3);
  EXPECT_THROW(g.on(0, 1), std::out_of_range);
  EXPECT_THROW(g.set(1, 4, true), std::out_of_range);
  EXPECT_THROW(GridInstance(0), std::invalid_argument);
}

TEST(ExactNoPath, SmallCases) {
  for (double q : {0.0, 0.1, 0.5, 0.9, 1.0}) EXPECT_NEAR(exact_no_path_prob(1, q), q, 1e-15);
  EXPECT_NEAR(exact_no_path_prob(2, 0.5), 0.8125, 1e-15);
  const double q = 0.3;
  const double p = 0.7;
  EXPECT_NEAR(exact_no_path_prob(2, q), 1.0 - p * p * (1.0 - q * q), 1e-15);
}

TEST(ExactNoPath, MatchesEnumeration) {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k <= 20; ++k) {
      const double q = k / 20.0;
      ASSERT_NEAR(exact_no_path_prob(n, q), enumerate_no_path_prob(n, q), 1e-12) << "n=" << n << " q=" << q;
    }
  }
  EXPECT_NEAR(exact_no_path_prob(4, 0.37), enumerate_no_path_prob(4, 0.37), 1e-12);
}

TEST(ExactNoPath, MonotoneInQ) {
  for (int n : {2, 5, 9}) {
    double prev = 0.0;
    for (int k = 0; k <= 50; ++k) {
      const double v = exact_no_path_prob(n, k / 50.0);
      ASSERT_GE(v, prev - 1e-15);
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0 + 1e-12);
      prev = v;
    }
    EXPECT_NEAR(prev, 1.0, 1e-12);
  }
}

TEST(ExactNoPath, Errors) {
  EXPECT_THROW(exact_no_path_prob(0, 0.5), std::invalid_argument);
  EXPECT_THROW(exact_no_path_prob(17, 0.5), std::invalid_argument);
  EXPECT_THROW(exact_no_path_prob(3, 1.5), std::invalid_argument);
  EXPECT_NO_THROW(exact_no_path_prob(16, 0.5));
}

TEST(SampleNoPath, Extremes) {
  EXPECT_EQ(sample_no_path_prob(5, 1.0, 200, 1).mean, 1.0);
  EXPECT_EQ(sample_no_path_prob(5, 0.0, 200, 1).mean, 0.0);
  EXPECT_EQ(sample_no_path_prob(5, 0.0, 200, 1).std_error, 0.0);
  EXPECT_THROW(sample_no_path_prob(5, -0.1, 10, 1), std::invalid_argument);
  EXPECT_THROW(sample_no_path_prob(5, 0.5, 0, 1), std::invalid_argument);
}

TEST(SampleNoPath, Reproducible) {
  const PercEstimate a = sample_no_path_prob(6, 0.3, 2000, 9);
  const PercEstimate b = sample_no_path_prob(6, 0.3, 2000, 9);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.trials, 2000u);
  EXPECT_EQ(a.seed, 9u);
  EXPECT_NEAR(a.std_error, std::sqrt(a.mean * (1 - a.mean) / 2000.0), 1e-15);
  EXPECT_EQ(sample_grid(6, 0.3, 9, 17), sample_grid(6, 0.3, 9, 17));
}

TEST(SampleNoPath, AgreesWithExact) {
  for (int n : {8, 10, 12}) {
    for (double q : {0.2, 0.35, 0.5}) {
      const std::uint64_t trials = n == 10 && q == 0.5 ? 100000 : 20000;
      const PercEstimate e = sample_no_path_prob(n, q, trials, 71);
      const double exact = exact_no_path_prob(n, q);
      const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
      EXPECT_LE(std::abs(e.mean - exact), 4.0 * sigma) << "n=" << n << " q=" << q;
    }
  }
}

TEST(NoPathBound, Examples) {
  const NoPathBound a = no_path_bound(std::ldexp(1.0, -20));
  EXPECT_NEAR(3.0 * std::pow(std::ldexp(1.0, -20), 0.25), 0.09375, 1e-15);
  EXPECT_NEAR(a.contour, 0.047234, 1e-6);
  EXPECT_NEAR(a.simplified, 288.0 / 1024.0, 1e-15);
  // alpha = 3 * 2^-7.5
  const double alpha = 3.0 * std::pow(2.0, -7.5);
  const NoPathBound b = no_path_bound(std::ldexp(1.0, -30));
  EXPECT_NEAR(b.contour, 4.0 * alpha * alpha / std::pow(1.0 - alpha, 3), 1e-15);
  EXPECT_NEAR(b.contour, 0.0011551, 1e-7);
  EXPECT_THROW(no_path_bound(kPercolationQ0), std::domain_error);
  EXPECT_THROW(no_path_bound(0.0), std::domain_error);
  EXPECT_LT(no_path_bound(kPercolationQ0 * (1 - 1e-9)).contour, 1.0);
}

TEST(NoPathBound, HoldsForExactProbability) {
  const double c = 288.0 * 288.0;
  for (int n = 1; n <= 14; ++n) {
    for (int e : {20, 24, 28}) {
      const double q = std::ldexp(1.0, -e);
      const double exact = exact_no_path_prob(n, q);
      ASSERT_LE(exact, no_path_bound(q).contour) << n << " " << e;
      ASSERT_LE(exact, std::sqrt(c * q)) << n << " " << e;
    }
  }
}

TEST(Antipath, Examples) {
  const GridInstance fig = figure_grid();
  EXPECT_FALSE(antipath_exists(fig, 8));
  EXPECT_FALSE(antipath_exists(fig, 4));
  EXPECT_FALSE(grid_reachable(fig));

  GridInstance column(5);
  for (int y = 1; y <= 5; ++y) column.set(2, y, false);
  EXPECT_TRUE(antipath_exists(column, 4));
  EXPECT_TRUE(antipath_exists(column, 8));
  EXPECT_FALSE(grid_reachable(column));

  EXPECT_FALSE(antipath_exists(GridInstance(5, true), 4));
  EXPECT_FALSE(antipath_exists(GridInstance(5, true), 8));
  EXPECT_THROW(antipath_exists(fig, 6), std::invalid_argument);
}

TEST(Antipath, DiagonalNeedsEightConnectivity) {
  GridInstance g(4);
  for (int k = 1; k <= 4; ++k) g.set(k, 5 - k, false);
  EXPECT_FALSE(antipath_exists(g, 4));
  EXPECT_TRUE(antipath_exists(g, 8));
  EXPECT_FALSE(grid_reachable(g));
}

TEST(Antipath, EightConnectedBlockerImpliesNoPath) {
  // an 8-connected wall between the two boundary arcs always blocks
  for (int n = 2; n <= 4; ++n) {
    const int cells = n * n;
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
      GridInstance g(n);
      for (int c = 0; c < cells; ++c) g.set(c % n + 1, c / n + 1, (mask >> c & 1u) != 0);
      if (!g.on(1, 1) || !g.on(n, n)) continue;
      if (antipath_exists(g, 8)) {
        ASSERT_FALSE(grid_reachable(g));
      }
      if (antipath_exists(g, 4)) {
        ASSERT_TRUE(antipath_exists(g, 8));
      }
    }
  }
}

TEST(GridFile, RoundTripAndFixture) {
  const GridInstance fig = figure_grid();
  std::ostringstream os;
  write_grid(os, fig);
  EXPECT_EQ(os.str(), "5\n11111\n01101\n10110\n11011\n11111\n");
  std::istringstream is(os.str());
  EXPECT_EQ(read_grid(is), fig);

  std::ifstream in(std::string(UDGO_DATA_DIR) + "/figure_cexp.grid");
  ASSERT_TRUE(in);
  EXPECT_EQ(read_grid(in), fig);

  std::istringstream bad("3\n111\n1x1\n111\n");
  EXPECT_THROW(read_grid(bad), std::runtime_error);
  std::istringstream short_rows("3\n111\n11\n111\n");
  EXPECT_THROW(read_grid(short_rows), std::runtime_error);
}

TEST(Counterexample, FixtureReport) {
  const Report rep = check_counterexample(figure_grid());
  EXPECT_EQ(rep.checks.size(), 3u);
  EXPECT_TRUE(rep.passed());
}
