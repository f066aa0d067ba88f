#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <sstream>

#include "udgo/geometry.hpp"
#include "udgo/rng.hpp"

using namespace udgo;

namespace {

std::vector<double> random_point(Rng& rng, int d) {
  std::vector<double> p(static_cast<std::size_t>(d));
  for (auto& x : p) x = rng.uniform();
  return p;
}

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(EuclidDist, Examples) {
  EXPECT_EQ(euclid_dist(std::vector<double>{0, 0}, std::vector<double>{0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(euclid_dist(std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
  EXPECT_NEAR(euclid_dist(std::vector<double>{0.1, 0.2, 0.2}, std::vector<double>{0.1, 0.2, 0.5}), 0.3, 1e-15);
}

TEST(EuclidDist, DimensionMismatchThrows) {
  EXPECT_THROW(euclid_dist(std::vector<double>{0, 0}, std::vector<double>{0, 0, 0}), std::invalid_argument);
}

TEST(EuclidDist, Symmetric) {
  Rng rng(3, 0);
  for (int k = 0; k < 100; ++k) {
    auto p = random_point(rng, 3);
    auto q = random_point(rng, 3);
    EXPECT_EQ(euclid_dist(p, q), euclid_dist(q, p));
  }
}

TEST(BuildFrame, TwoDimensionalConvention) {
  const LocalFrame f = build_frame(std::vector<double>{0, 0}, std::vector<double>{3, 4});
  EXPECT_DOUBLE_EQ(f.w, 5.0);
  EXPECT_NEAR(f.axis(0)[0], 0.6, 1e-15);
  EXPECT_NEAR(f.axis(0)[1], 0.8, 1e-15);
  EXPECT_NEAR(f.axis(1)[0], -0.8, 1e-15);
  EXPECT_NEAR(f.axis(1)[1], 0.6, 1e-15);
}

TEST(BuildFrame, DegenerateThrows) {
  EXPECT_THROW(build_frame(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}), DegenerateFrameError);
}

TEST(BuildFrame, AlignedIsIdentity) {
  const LocalFrame f = build_frame(std::vector<double>{0, 0, 0}, std::vector<double>{1, 0, 0});
  EXPECT_DOUBLE_EQ(f.w, 1.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(f.axis(i)[static_cast<std::size_t>(j)], i == j ? 1.0 : 0.0, 1e-15);
  }
}

TEST(ToLocal, Examples) {
  const std::vector<double> s{0, 0};
  const std::vector<double> t{3, 4};
  const LocalFrame f = build_frame(s, t);
  const Point lt = to_local(f, t);
  EXPECT_NEAR(lt[0], 5.0, 1e-12);
  EXPECT_NEAR(lt[1], 0.0, 1e-12);
  const Point ls = to_local(f, s);
  EXPECT_NEAR(ls[0], 0.0, 1e-12);
  EXPECT_NEAR(ls[1], 0.0, 1e-12);
  const Point lp = to_local(f, std::vector<double>{3 - 0.8, 4 + 0.6});
  EXPECT_NEAR(lp[0], 5.0, 1e-12);
  EXPECT_NEAR(lp[1], 1.0, 1e-12);
}

TEST(ToLocal, DimensionMismatchThrows) {
  const LocalFrame f = build_frame(std::vector<double>{0, 0}, std::vector<double>{1, 0});
  EXPECT_THROW(to_local(f, std::vector<double>{0, 0, 0}), std::invalid_argument);
}

TEST(LocalFrame, AxiomsForRandomPairs) {
  Rng rng(5, 0);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 1000; ++k) {
      const auto s = random_point(rng, d);
      const auto t = random_point(rng, d);
      const LocalFrame f = build_frame(s, t);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          double dot = 0.0;
          for (int c = 0; c < d; ++c) {
            dot += f.axis(i)[static_cast<std::size_t>(c)] * f.axis(j)[static_cast<std::size_t>(c)];
          }
          ASSERT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
        }
      }
      for (int c = 0; c < d; ++c) {
        const auto uc = static_cast<std::size_t>(c);
        ASSERT_NEAR(f.axis(0)[uc], (t[uc] - s[uc]) / f.w, 1e-12);
      }
      const Point ls = to_local(f, s);
      const Point lt = to_local(f, t);
      for (int c = 0; c < d; ++c) {
        const auto uc = static_cast<std::size_t>(c);
        ASSERT_NEAR(ls[uc], 0.0, 1e-12);
        ASSERT_NEAR(lt[uc], c == 0 ? f.w : 0.0, 1e-12);
      }
    }
  }
}

TEST(LocalFrame, Isometry) {
  Rng rng(6, 0);
  for (int d : {2, 3, 4}) {
    for (int k = 0; k < 300; ++k) {
      const LocalFrame f = build_frame(random_point(rng, d), random_point(rng, d));
      const auto p = random_point(rng, d);
      const auto q = random_point(rng, d);
      const Point lp = to_local(f, p);
      const Point lq = to_local(f, q);
      ASSERT_NEAR(euclid_dist(p, q), euclid_dist(lp, lq), 1e-9);
      const Point back = to_global(f, lp);
      for (std::size_t j = 0; j < p.size(); ++j) ASSERT_NEAR(back[j], p[j], 1e-12);
    }
  }
}

TEST(GenInstance, Deterministic) {
  const Instance a = gen_instance(100, 2, 0.2, 7);
  const Instance b = gen_instance(100, 2, 0.2, 7);
  EXPECT_EQ(vec(a.coords()), vec(b.coords()));
  const Instance c = gen_instance(100, 2, 0.2, 8);
  EXPECT_NE(vec(a.coords()), vec(c.coords()));
}

TEST(GenInstance, CoordinateMeans) {
  const Instance inst = gen_instance(100000, 2, 0.2, 3);
  double m[2] = {0, 0};
  for (PointId i = 0; i < inst.size(); ++i) {
    m[0] += inst.point(i)[0];
    m[1] += inst.point(i)[1];
  }
  for (double x : m) {
    EXPECT_GE(x / 1e5, 0.49);
    EXPECT_LE(x / 1e5, 0.51);
  }
}

TEST(GenInstance, InvalidParameters) {
  EXPECT_THROW(gen_instance(2, 2, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(gen_instance(2, 2, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(gen_instance(10, 1, 0.1, 1), std::invalid_argument);
}

TEST(Instance, RejectsPointsOutsideCube) {
  EXPECT_THROW(Instance(2, 0.1, {0.5, 1.5}), std::invalid_argument);
  EXPECT_THROW(Instance(2, 0.1, {0.5, 0.5, 0.2}), std::invalid_argument);
}

TEST(InstanceFile, HeaderAndRoundTrip) {
  const Instance inst = gen_instance(1000, 2, 0.1, 1);
  std::ostringstream os;
  write_instance(os, inst);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "2 0.1 1000 1");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1001);
  std::istringstream is(text);
  const Instance back = read_instance(is);
  EXPECT_EQ(vec(back.coords()), vec(inst.coords()));
  EXPECT_EQ(back.radius(), inst.radius());
  EXPECT_EQ(back.seed(), inst.seed());
}

TEST(InstanceFile, RejectsMalformed) {
  std::istringstream short_file("2 0.1 3 0\n0.1 0.2\n0.3\n");
  EXPECT_THROW(read_instance(short_file), std::runtime_error);
  std::istringstream bad_number("2 0.1 1 0\n0.1 x\n");
  EXPECT_THROW(read_instance(bad_number), std::runtime_error);
}

TEST(Rng, StreamsAreIndependentAndReproducible) {
  Rng a(1, stream::instance);
  Rng b(1, stream::instance);
  Rng c(1, stream::queries);
  for (int k = 0; k < 10; ++k) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  Rng u(9, 0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    ASSERT_LT(u.below(7), 7u);
  }
}
