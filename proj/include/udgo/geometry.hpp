#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "udgo/rng.hpp"

namespace udgo {

using PointId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class DegenerateFrameError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A point in R^d.  Instance points live in the unit cube; local-frame points
// are unbounded.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::span<const double> coords)
      : coords_(coords.begin(), coords.end()) {}

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  operator std::span<const double>() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

inline double squared_dist(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    acc += diff * diff;
  }
  return acc;
}

inline double euclid_dist(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("euclid_dist: dimension mismatch");
  }
  return std::sqrt(squared_dist(p, q));
}

// n points in [0,1]^d with connectivity radius r.  Coordinates are stored
// point-major in a flat array; ids are dense 0..n-1.
class Instance {
 public:
  Instance(int d, double r, std::vector<double> coords, std::uint64_t seed = 0)
      : d_(d), r_(r), seed_(seed), coords_(std::move(coords)) {
    if (d_ < 2) throw std::invalid_argument("instance: d must be >= 2");
    if (!(r_ > 0.0 && r_ < 1.0)) {
      throw std::invalid_argument("instance: r must lie in (0, 1)");
    }
    if (coords_.size() % static_cast<std::size_t>(d_) != 0) {
      throw std::invalid_argument("instance: coordinate count not a multiple of d");
    }
    for (double x : coords_) check_coord(x);
  }

  int dim() const { return d_; }
  double radius() const { return r_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
  std::span<const double> coords() const { return coords_; }

  std::span<const double> point(PointId id) const {
    return {coords_.data() + static_cast<std::size_t>(id) * d_, static_cast<std::size_t>(d_)};
  }

  bool contains(PointId id) const { return id < size(); }

  PointId append(std::span<const double> p) {
    if (p.size() != static_cast<std::size_t>(d_)) {
      throw std::invalid_argument("instance: dimension mismatch");
    }
    for (double x : p) check_coord(x);
    coords_.insert(coords_.end(), p.begin(), p.end());
    return static_cast<PointId>(size() - 1);
  }

  // Removes `id` by moving the last point into its slot.  Returns the old id
  // of the moved point (== id when the last point itself was removed).
  PointId swap_remove(PointId id) {
    if (!contains(id)) throw std::out_of_range("instance: unknown point id");
    const auto last = static_cast<PointId>(size() - 1);
    if (id != last) {
      std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(last) * d_, d_,
                  coords_.begin() + static_cast<std::ptrdiff_t>(id) * d_);
    }
    coords_.resize(coords_.size() - d_);
    return last;
  }

 private:
  static void check_coord(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("instance: coordinate outside [0, 1]");
    }
  }

  int d_;
  double r_;
  std::uint64_t seed_;
  std::vector<double> coords_;
};

inline Instance gen_instance(std::size_t n, int d, double r, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_instance: n must be >= 2");
  if (d < 2) throw std::invalid_argument("gen_instance: d must be >= 2");
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("gen_instance: r must lie in (0, 1)");
  Rng rng(seed, stream::instance);
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (double& x : coords) x = rng.uniform();
  return Instance(d, r, std::move(coords), seed);
}

// Rigid frame with s at the origin and t on the positive first axis.
// basis row j is the j-th local axis expressed in global coordinates.
struct LocalFrame {
  Point origin;
  std::vector<double> basis;  // d x d, row-major
  double w = 0.0;

  int dim() const { return static_cast<int>(origin.dim()); }
  std::span<const double> axis(int j) const {
    const auto d = static_cast<std::size_t>(dim());
    return {basis.data() + static_cast<std::size_t>(j) * d, d};
  }
};

inline LocalFrame build_frame(std::span<const double> s, std::span<const double> t) {
  if (s.size() != t.size()) throw std::invalid_argument("build_frame: dimension mismatch");
  const std::size_t d = s.size();
  if (d < 2) throw std::invalid_argument("build_frame: d must be >= 2");
  const double w = euclid_dist(s, t);
  if (w == 0.0) throw DegenerateFrameError("build_frame: s == t");

  LocalFrame f{Point(s), std::vector<double>(d * d, 0.0), w};
  std::vector<double> u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = (t[i] - s[i]) / w;

  if (d == 2) {
    f.basis = {u[0], u[1], -u[1], u[0]};
    return f;
  }

  // Householder reflection H = I - 2 v v^T / (v^T v) with v = u +- e_0, chosen
  // so that v never cancels.  H e_0 = -+u; rows 1..d-1 are H e_j.
  std::vector<double> v = u;
  v[0] += (u[0] >= 0.0) ? 1.0 : -1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;
  for (std::size_t i = 0; i < d; ++i) f.basis[i] = u[i];
  for (std::size_t j = 1; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      f.basis[j * d + i] = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j] / vv;
    }
  }
  return f;
}

inline void to_local(const LocalFrame& f, std::span<const double> p, std::span<double> out) {
  const std::size_t d = f.origin.dim();
  if (p.size() != d || out.size() != d) {
    throw std::invalid_argument("to_local: dimension mismatch");
  }
  for (std::size_t j = 0; j < d; ++j) {
    double acc = 0.0;
    const double* row = f.basis.data() + j * d;
    for (std::size_t i = 0; i < d; ++i) acc += row[i] * (p[i] - f.origin[i]);
    out[j] = acc;
  }
}

inline Point to_local(const LocalFrame& f, std::span<const double> p) {
  std::vector<double> out(f.origin.dim());
  to_local(f, p, out);
  return Point(std::move(out));
}

inline Point to_global(const LocalFrame& f, std::span<const double> y) {
  const std::size_t d = f.origin.dim();
  if (y.size() != d) throw std::invalid_argument("to_global: dimension mismatch");
  std::vector<double> out(f.origin.coords().begin(), f.origin.coords().end());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) out[i] += y[j] * f.basis[j * d + i];
  }
  return Point(std::move(out));
}

// ---- instance file format -------------------------------------------------
//
//   d r n seed
//   x_1 ... x_d        (n lines)
//
// Numbers use the shortest representation that round-trips (at most 17
// significant digits).

namespace detail {

inline void append_double(std::string& out, double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, res.ptr);
}

}  // namespace detail

inline void write_instance(std::ostream& os, const Instance& inst) {
  std::string line;
  line += std::to_string(inst.dim());
  line += ' ';
  detail::append_double(line, inst.radius());
  line += ' ';
  line += std::to_string(inst.size());
  line += ' ';
  line += std::to_string(inst.seed());
  line += '\n';
  os << line;
  for (PointId i = 0; i < inst.size(); ++i) {
    line.clear();
    auto p = inst.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) line += ' ';
      detail::append_double(line, p[j]);
    }
    line += '\n';
    os << line;
  }
}

inline Instance read_instance(std::istream& is) {
  int d = 0;
  double r = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string tok;
  auto next_token = [&](const char* what) {
    if (!(is >> tok)) throw std::runtime_error(std::string("instance file: missing ") + what);
    return tok;
  };
  auto parse_double = [&](const std::string& s) {
    double x = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::runtime_error("instance file: bad number '" + s + "'");
    }
    return x;
  };
  auto parse_uint = [&](const std::string& s) {
    std::uint64_t x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw std::runtime_error("instance file: bad integer '" + s + "'");
    }
    return x;
  };
  d = static_cast<int>(parse_uint(next_token("d")));
  r = parse_double(next_token("r"));
  n = parse_uint(next_token("n"));
  seed = parse_uint(next_token("seed"));
  if (d < 2 || d > 64) throw std::runtime_error("instance file: bad dimension");
  std::vector<double> coords;
  coords.reserve(n * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n * static_cast<std::size_t>(d); ++i) {
    coords.push_back(parse_double(next_token("coordinate")));
  }
  if (is >> tok) throw std::runtime_error("instance file: trailing data");
  return Instance(d, r, std::move(coords), seed);
}

}  // namespace udgo
