#include <gtest/gtest.h>

#include <cmath>

#include "udgo/json_io.hpp"
#include "udgo/rng.hpp"
#include "udgo/schedule.hpp"

using namespace udgo;

namespace {

// Smallest K >= 1 with w / (4K + 1) <= r / 4, by plain counting.
int min_K_by_scan(double w, double r) {
  int K = 1;
  while (w / (4.0 * K + 1.0) > r / 4.0) ++K;
  return K;
}

}  // namespace

TEST(ChannelDiscretization, Examples) {
  const auto a = channel_discretization(0.5, 0.1);
  EXPECT_EQ(a.K, 5);
  EXPECT_EQ(min_K_by_scan(0.5, 0.1), 5);
  EXPECT_NEAR(a.l, 0.5 / 21.0, 1e-15);
  EXPECT_NEAR(a.l, 0.0238095, 1e-7);
  const auto b = channel_discretization(0.26, 0.25);
  EXPECT_EQ(b.K, 1);
  EXPECT_NEAR(b.l, 0.052, 1e-15);
}

TEST(ChannelDiscretization, RejectsShortQueries) {
  EXPECT_THROW(channel_discretization(0.1, 0.1), std::invalid_argument);
  EXPECT_THROW(channel_discretization(0.05, 0.1), std::invalid_argument);
  EXPECT_THROW(channel_discretization(0.5, 0.0), std::invalid_argument);
}

TEST(ChannelDiscretization, MinimalAndWithinBandFuzz) {
  Rng rng(41, 0);
  for (int k = 0; k < 10000; ++k) {
    const double r = 0.001 + 0.3 * rng.uniform();
    const double w = r * (1.0 + 1e-9 + 40.0 * rng.uniform());
    const auto [K, l] = channel_discretization(w, r);
    ASSERT_EQ(K, min_K_by_scan(w, r)) << "w=" << w << " r=" << r;
    ASSERT_LE(l, r / 4.0);
    ASSERT_GT(l, r / 20.0);
  }
}

TEST(CPrime, PaperValues) {
  const OracleParams p = OracleParams::paper();
  EXPECT_NEAR(c_prime(2, p), 2.0 * std::log(288.0) + 2.0, 1e-12);
  EXPECT_NEAR(c_prime(2, p), 13.32592, 1e-5);
  EXPECT_NEAR(c_prime(3, p), 12.32592, 1e-5);
  EXPECT_NEAR(c_prime(4, p), std::log(2.0 * 1024.0 * 81.0), 1e-12);
  EXPECT_NEAR(c_prime(4, p), 12.01907, 1e-5);
  // the constant is the tightest one: both branches at i = 1
  for (int d = 2; d <= 6; ++d) {
    const double c = c_prime(d, p);
    for (int i = 1; i <= 50; ++i) {
      ASSERT_LE(std::max(std::log(2.0 / p.q0), std::log(p.c) + i / std::ldexp(1.0, d - 3)), c * i + 1e-12);
    }
  }
}

TEST(CPrime, PracticalIsKappa) {
  EXPECT_EQ(c_prime(2, OracleParams::practical()), 1.0);
  EXPECT_EQ(c_prime(3, OracleParams::practical(2.5)), 2.5);
  EXPECT_THROW(c_prime(2, OracleParams::practical(0.0)), std::invalid_argument);
  EXPECT_THROW(c_prime(1, OracleParams::paper()), std::invalid_argument);
}

TEST(MaxH, Examples) {
  EXPECT_NEAR(max_h(2, 0.1), 0.0330719, 1e-7);
  EXPECT_NEAR(max_h(8, 0.1), 0.1 / 8.0, 1e-15);
  for (int d = 2; d <= 10; ++d) {
    const double r = 0.1;
    const double l = r / 4.0;
    const double h = max_h(d, r);
    EXPECT_LE(9.0 * l * l + (d - 1) * 4.0 * h * h, r * r * (1.0 + 1e-12));
  }
}

TEST(MakeSchedule, PaperExample) {
  const QuerySchedule s = make_schedule(1000000, 2, 0.05, 0.5, OracleParams::paper());
  EXPECT_EQ(s.K, 10);
  EXPECT_NEAR(s.l, 0.5 / 41.0, 1e-15);
  EXPECT_EQ(s.i_max, 15);
  // h_0^(d-1) = c' / (n l)
  EXPECT_NEAR(s.h0, s.c_prime / (1e6 * s.l), 1e-15);
  EXPECT_NEAR(s.h(1), 0.00109273, 1e-8);
  EXPECT_NEAR(w_ub(s, 1), 0.664114, 1e-6);
  EXPECT_NEAR(s.h(15), 0.0163909, 1e-7);
  EXPECT_LE(s.h(15), max_h(2, 0.05));
  EXPECT_NEAR(max_h(2, 0.05), 0.0165359, 1e-7);
  EXPECT_GT(s.h(16), max_h(2, 0.05));
  for (long long i = 2; i <= s.i_max; ++i) EXPECT_GT(w_ub(s, i), w_ub(s, i - 1));
  EXPECT_GT(w_ub(s, 1), s.w);
}

TEST(MakeSchedule, SmallInstanceDegenerateInPaperMode) {
  EXPECT_EQ(make_schedule(10000, 2, 0.1, 0.5, OracleParams::paper()).i_max, 0);
  EXPECT_GE(make_schedule(10000, 2, 0.1, 0.5, OracleParams::practical()).i_max, 1);
}

TEST(MakeSchedule, IMaxFormulaAndTightness) {
  Rng rng(43, 0);
  for (int k = 0; k < 2000; ++k) {
    const int d = 2 + static_cast<int>(rng.below(3));
    const std::size_t n = 1000 + rng.below(10000000);
    const double r = 0.01 + 0.2 * rng.uniform();
    const double w = r * (1.01 + 20.0 * rng.uniform());
    const OracleParams p = rng.uniform() < 0.5 ? OracleParams::paper() : OracleParams::practical(0.5 + rng.uniform());
    const QuerySchedule s = make_schedule(n, d, r, w, p);
    const double hmax = max_h(d, r);
    const double raw = std::pow(hmax, d - 1) * static_cast<double>(n) * s.l / s.c_prime;
    ASSERT_LE(std::abs(static_cast<double>(s.i_max) - std::floor(raw)), 1.0);
    if (s.i_max > 0) {
      ASSERT_LE(s.h(s.i_max), hmax);
    }
    ASSERT_GT(s.h(s.i_max + 1), hmax);
  }
}

TEST(WUb, MatchesHForm) {
  for (std::size_t n : {100000, 1000000, 100000000}) {
    for (int d : {2, 3, 4}) {
      const double r = 0.1;
      const double w = 0.6;
      const QuerySchedule s = make_schedule(n, d, r, w, OracleParams::paper());
      for (long long i = 1; i <= std::min<long long>(s.i_max, 500); ++i) {
        const double hi = s.h(i);
        const double via_h = w * std::sqrt(1.0 + 1600.0 * (d - 1) * (hi / r) * (hi / r));
        ASSERT_NEAR(via_h, w_ub(s, i), 1e-12 * via_h);
        // per-box emptiness exponent n l h_i^(d-1) = c' i
        ASSERT_NEAR(std::exp(-static_cast<double>(n) * s.l * std::pow(hi, d - 1)), std::exp(-s.c_prime * i), 1e-9);
      }
    }
  }
}

TEST(WUb, StageOutOfRange) {
  const QuerySchedule s = make_schedule(1000000, 2, 0.05, 0.5, OracleParams::paper());
  EXPECT_THROW(w_ub(s, 0), std::out_of_range);
  EXPECT_THROW(w_ub(s, 16), std::out_of_range);
  const LocalFrame f = build_frame(std::vector<double>{0.2, 0.5}, std::vector<double>{0.7, 0.5});
  EXPECT_THROW(bounding_box(s, f, 16), std::out_of_range);
}

TEST(BoundingBox, Example) {
  const LocalFrame f = build_frame(std::vector<double>{0.2, 0.5}, std::vector<double>{0.7, 0.5});
  const Box b = bounding_box_for(f, 0.664114);
  EXPECT_NEAR(b.hi[1], 0.218545, 1e-6);
  EXPECT_NEAR(b.lo[1], -0.218545, 1e-6);
  EXPECT_NEAR(b.lo[0], -0.082057, 1e-6);
  EXPECT_NEAR(b.hi[0], 0.582057, 1e-6);
}

TEST(BoundingBox, ContainsEndpointsAndEllipsoid) {
  Rng rng(47, 0);
  for (int d : {2, 3}) {
    std::vector<double> s(static_cast<std::size_t>(d));
    std::vector<double> t(static_cast<std::size_t>(d));
    for (auto& x : s) x = 0.3 * rng.uniform();
    for (auto& x : t) x = 0.7 + 0.3 * rng.uniform();
    const LocalFrame f = build_frame(s, t);
    const double w = f.w;
    const QuerySchedule sched = make_schedule(1000000, d, 0.1, w, OracleParams::paper());
    ASSERT_GE(sched.i_max, 1);
    for (long long i = 1; i <= sched.i_max; ++i) {
      const Box b = bounding_box(sched, f, i);
      ASSERT_TRUE(b.valid());
      ASSERT_TRUE(b.contains_local(to_local(f, s).coords()));
      ASSERT_TRUE(b.contains_local(to_local(f, t).coords()));
    }
    const double W = w_ub(sched, sched.i_max);
    const Box b = bounding_box_for(f, W);
    // sample a cube around the ellipsoid and keep points inside it
    int inside = 0;
    while (inside < 1000) {
      std::vector<double> x(static_cast<std::size_t>(d));
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = s[j] + (2.0 * rng.uniform() - 1.0) * W;
      if (euclid_dist(x, s) + euclid_dist(x, t) > W) continue;
      ++inside;
      const Point y = to_local(f, x);
      for (std::size_t j = 0; j < x.size(); ++j) {
        ASSERT_GE(y[j], b.lo[j] - 1e-12);
        ASSERT_LE(y[j], b.hi[j] + 1e-12);
      }
    }
  }
}

TEST(ScheduleJson, RoundTrip) {
  const QuerySchedule s = make_schedule(1000000, 3, 0.05, 0.5, OracleParams::paper());
  const auto j = to_json(s);
  EXPECT_EQ(j.at("i_max").get<long long>(), s.i_max);
  EXPECT_EQ(j.at("K").get<int>(), s.K);
  const QuerySchedule back = schedule_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.n, s.n);
  EXPECT_EQ(back.d, s.d);
  EXPECT_EQ(back.r, s.r);
  EXPECT_EQ(back.w, s.w);
  EXPECT_EQ(back.K, s.K);
  EXPECT_EQ(back.l, s.l);
  EXPECT_EQ(back.c_prime, s.c_prime);
  EXPECT_EQ(back.h0, s.h0);
  EXPECT_EQ(back.i_max, s.i_max);
}
