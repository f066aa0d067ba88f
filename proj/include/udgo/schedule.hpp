#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "udgo/cell_index.hpp"
#include "udgo/geometry.hpp"

namespace udgo {

enum class ScheduleMode { paper, practical };

// Constants of the growing-box schedule.  In paper mode c' is derived from c
// and q0; in practical mode c' is replaced by kappa.
struct OracleParams {
  ScheduleMode mode = ScheduleMode::practical;
  double kappa = 1.0;
  double c = 288.0 * 288.0;             // (32 * 9)^2
  double q0 = 1.0 / (1024.0 * 81.0);    // 1 / (2^10 * 3^4)

  static OracleParams paper() { return {ScheduleMode::paper}; }
  static OracleParams practical(double kappa = 1.0) { return {ScheduleMode::practical, kappa}; }
};

// Largest lateral box size for which any two points in boxes related by a
// jump are within distance r.
inline double max_h(int d, double r) {
  if (d < 2) throw std::invalid_argument("max_h: d must be >= 2");
  return 0.125 * std::sqrt(7.0 / (d - 1)) * r;
}

struct ChannelDiscretization {
  int K = 0;
  double l = 0.0;
};

// Smallest K >= 1 with w / (4K + 1) <= r / 4.
inline ChannelDiscretization channel_discretization(double w, double r) {
  if (!(r > 0.0) || !(w > r)) throw std::invalid_argument("channel_discretization: need w > r > 0");
  auto K = static_cast<long long>(std::ceil((4.0 * w / r - 1.0) / 4.0));
  K = std::max<long long>(K, 1);
  while (K > 1 && w / (4.0 * (K - 1) + 1.0) <= r / 4.0) --K;
  while (w / (4.0 * K + 1.0) > r / 4.0) ++K;
  return {static_cast<int>(K), w / (4.0 * K + 1.0)};
}

// Minimal c' with max(ln(2/q0), ln c + i / 2^(d-3)) <= c' i for all i >= 1;
// both branches are tightest at i = 1.
inline double c_prime(int d, const OracleParams& params) {
  if (d < 2) throw std::invalid_argument("c_prime: d must be >= 2");
  if (params.mode == ScheduleMode::practical) {
    if (!(params.kappa > 0.0)) throw std::invalid_argument("c_prime: kappa must be positive");
    return params.kappa;
  }
  return std::max(std::log(2.0 / params.q0), std::log(params.c) + std::ldexp(1.0, 3 - d));
}

struct QuerySchedule {
  std::size_t n = 0;
  int d = 2;
  double r = 0.0;
  double w = 0.0;
  int K = 0;
  double l = 0.0;
  double c_prime = 0.0;
  double h0 = 0.0;
  long long i_max = 0;

  // h_i = h0 * i^(1/(d-1))
  double h(long long i) const {
    return h0 * std::pow(static_cast<double>(i), 1.0 / (d - 1));
  }
};

inline QuerySchedule make_schedule(std::size_t n, int d, double r, double w, const OracleParams& params) {
  if (n < 1) throw std::invalid_argument("make_schedule: n must be >= 1");
  const auto [K, l] = channel_discretization(w, r);
  QuerySchedule s;
  s.n = n;
  s.d = d;
  s.r = r;
  s.w = w;
  s.K = K;
  s.l = l;
  s.c_prime = c_prime(d, params);
  const double nl = static_cast<double>(n) * l;
  s.h0 = std::pow(s.c_prime / nl, 1.0 / (d - 1));

  const double hmax = max_h(d, r);
  const double raw = std::pow(hmax, d - 1) * nl / s.c_prime;
  if (raw > 1e15) throw std::invalid_argument("make_schedule: i_max overflow");
  s.i_max = static_cast<long long>(std::floor(raw));
  // keep the floor exact against the h_i actually used
  while (s.i_max > 0 && s.h(s.i_max) > hmax) --s.i_max;
  while (s.h(s.i_max + 1) <= hmax) ++s.i_max;
  return s;
}

inline void check_stage(const QuerySchedule& s, long long i) {
  if (i < 1 || i > s.i_max) throw std::out_of_range("schedule: stage index out of range");
}

// W_ub(i) = w sqrt(1 + 40^2 (d-1) (c' i / (n l r^(d-1)))^(2/(d-1)))
inline double w_ub(const QuerySchedule& s, long long i) {
  check_stage(s, i);
  const double base = s.c_prime * static_cast<double>(i) /
                      (static_cast<double>(s.n) * s.l * std::pow(s.r, s.d - 1));
  return s.w * std::sqrt(1.0 + 1600.0 * (s.d - 1) * std::pow(base, 2.0 / (s.d - 1)));
}

// Local-frame box [-(W-w)/2, (W+w)/2] x [-R, R]^(d-1), R = sqrt(W^2 - w^2)/2.
inline Box bounding_box_for(const LocalFrame& frame, double W) {
  const double w = frame.w;
  const double R = 0.5 * std::sqrt(std::max(0.0, W * W - w * w));
  const auto d = static_cast<std::size_t>(frame.dim());
  Box b{frame, std::vector<double>(d, -R), std::vector<double>(d, R)};
  b.lo[0] = -(W - w) / 2.0;
  b.hi[0] = (W + w) / 2.0;
  return b;
}

inline Box bounding_box(const QuerySchedule& s, const LocalFrame& frame, long long i) {
  return bounding_box_for(frame, w_ub(s, i));
}

}  // namespace udgo
