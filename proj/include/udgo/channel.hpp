#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "udgo/geometry.hpp"
#include "udgo/percolation.hpp"
#include "udgo/schedule.hpp"

namespace udgo {

// Boxes R(z) of size l x h x ... x h between s and t.  Along x_0 the box
// z_0 covers [l z_0, l (z_0 + 1)); along x_i it covers
// [(z_i - 1/2) h, (z_i + 1/2) h).  A point with x_0 == w (t itself) belongs
// to z_0 = 4K.
struct ChannelSpec {
  int d = 2;
  double r = 0.0;
  double w = 0.0;
  double h = 0.0;
  int K = 0;
  double l = 0.0;
  LocalFrame frame;
};

inline ChannelSpec channel_spec(const LocalFrame& frame, double r, double h) {
  const int d = frame.dim();
  if (!(h > 0.0)) throw std::invalid_argument("channel: h must be positive");
  if (h > max_h(d, r)) throw std::invalid_argument("channel: h exceeds the jump-edge bound");
  const auto [K, l] = channel_discretization(frame.w, r);
  return {d, r, frame.w, h, K, l, frame};
}

struct BoxId {
  std::vector<int> z;
  friend auto operator<=>(const BoxId&, const BoxId&) = default;
};

struct BoxIdHash {
  std::size_t operator()(const BoxId& b) const {
    std::uint64_t acc = 0x243f6a8885a308d3ULL;
    for (int v : b.z) acc = splitmix64(acc ^ static_cast<std::uint32_t>(v));
    return static_cast<std::size_t>(acc);
  }
};

inline BoxId box_of_point(const ChannelSpec& spec, std::span<const double> p_local) {
  if (p_local.size() != static_cast<std::size_t>(spec.d)) {
    throw std::invalid_argument("box_of_point: dimension mismatch");
  }
  BoxId b{std::vector<int>(static_cast<std::size_t>(spec.d))};
  const double x0 = p_local[0];
  auto z0 = static_cast<long long>(std::floor(x0 / spec.l));
  // t maps to x_0 == w up to rounding in the frame transform
  if (z0 >= 4LL * spec.K + 1 && x0 <= spec.w * (1.0 + 1e-12)) z0 = 4LL * spec.K;
  b.z[0] = static_cast<int>(std::clamp<long long>(z0, INT32_MIN / 2, INT32_MAX / 2));
  for (int i = 1; i < spec.d; ++i) {
    const auto zi = static_cast<long long>(std::floor(p_local[static_cast<std::size_t>(i)] / spec.h + 0.5));
    b.z[static_cast<std::size_t>(i)] = static_cast<int>(std::clamp<long long>(zi, INT32_MIN / 2, INT32_MAX / 2));
  }
  return b;
}

// z_0 = 2k with 0 <= k <= 2K, |z_i| <= min(k, 2K - k), z_i = k (mod 2).
inline bool is_reachable_box(const ChannelSpec& spec, const BoxId& b) {
  if (b.z.size() != static_cast<std::size_t>(spec.d)) return false;
  const int z0 = b.z[0];
  if (z0 < 0 || z0 % 2 != 0) return false;
  const int k = z0 / 2;
  if (k > 2 * spec.K) return false;
  const int bound = std::min(k, 2 * spec.K - k);
  for (std::size_t i = 1; i < b.z.size(); ++i) {
    const int zi = b.z[i];
    if (std::abs(zi) > bound) return false;
    if (((zi - k) % 2 + 2) % 2 != 0) return false;
  }
  return true;
}

inline bool can_jump(const BoxId& a, const BoxId& b) {
  if (a.z.size() != b.z.size() || a.z.empty()) return false;
  if (b.z[0] != a.z[0] + 2) return false;
  for (std::size_t i = 1; i < a.z.size(); ++i) {
    if (std::abs(b.z[i] - a.z[i]) != 1) return false;
  }
  return true;
}

// All boxes of the channel, layer by layer.
inline std::vector<BoxId> reachable_boxes(const ChannelSpec& spec) {
  std::vector<BoxId> out;
  const auto lateral = static_cast<std::size_t>(spec.d - 1);
  for (int k = 0; k <= 2 * spec.K; ++k) {
    const int bound = std::min(k, 2 * spec.K - k);
    std::vector<int> z(lateral, -bound);
    while (true) {
      BoxId b{std::vector<int>{2 * k}};
      b.z.insert(b.z.end(), z.begin(), z.end());
      out.push_back(std::move(b));
      std::size_t j = 0;
      for (; j < lateral; ++j) {
        z[j] += 2;
        if (z[j] <= bound) break;
        z[j] = -bound;
      }
      if (j == lateral) break;
    }
  }
  return out;
}

inline double length_certificate(const ChannelSpec& spec) {
  const double ratio = spec.h / spec.r;
  return spec.w * std::sqrt(1.0 + 1600.0 * (spec.d - 1) * ratio * ratio);
}

struct ChannelOccupancy {
  ChannelSpec spec;
  std::unordered_set<BoxId, BoxIdHash> occupied;

  bool is_occupied(const BoxId& b) const { return occupied.contains(b); }

  // Marks the given boxes occupied; non-channel boxes are dropped.
  static ChannelOccupancy from_boxes(const ChannelSpec& spec, const std::vector<BoxId>& boxes) {
    ChannelOccupancy occ{spec, {}};
    for (const BoxId& b : boxes) {
      if (is_reachable_box(spec, b)) occ.occupied.insert(b);
    }
    return occ;
  }

  std::vector<BoxId> sorted() const {
    std::vector<BoxId> out(occupied.begin(), occupied.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Occupied channel boxes of the instance for the channel between s and t.
inline ChannelOccupancy occupancy(const Instance& inst, PointId s, PointId t, double h) {
  if (!inst.contains(s) || !inst.contains(t)) throw std::out_of_range("occupancy: unknown point id");
  const LocalFrame frame = build_frame(inst.point(s), inst.point(t));
  ChannelOccupancy occ{channel_spec(frame, inst.radius(), h), {}};
  std::vector<double> y(static_cast<std::size_t>(inst.dim()));
  for (PointId id = 0; id < inst.size(); ++id) {
    to_local(frame, inst.point(id), y);
    BoxId b = box_of_point(occ.spec, y);
    if (is_reachable_box(occ.spec, b)) occ.occupied.insert(std::move(b));
  }
  return occ;
}

// Whether a sequence of occupied boxes B_0 = R(0,..,0), ..., B_2K = R(4K,0,..,0)
// connected by jumps exists.  Layered sweep over k = 0..2K.
inline bool channel_path_exists(const ChannelOccupancy& occ) {
  const ChannelSpec& spec = occ.spec;
  const auto ud = static_cast<std::size_t>(spec.d);
  BoxId start{std::vector<int>(ud, 0)};
  BoxId goal{std::vector<int>(ud, 0)};
  goal.z[0] = 4 * spec.K;
  if (!occ.is_occupied(start) || !occ.is_occupied(goal)) return false;

  std::unordered_set<BoxId, BoxIdHash> layer{start};
  const std::size_t lateral = ud - 1;
  const std::size_t moves = std::size_t{1} << lateral;
  for (int k = 0; k < 2 * spec.K && !layer.empty(); ++k) {
    std::unordered_set<BoxId, BoxIdHash> next;
    for (const BoxId& b : layer) {
      for (std::size_t mask = 0; mask < moves; ++mask) {
        BoxId nb = b;
        nb.z[0] += 2;
        for (std::size_t i = 0; i < lateral; ++i) nb.z[i + 1] += (mask >> i & 1) ? 1 : -1;
        if (occ.is_occupied(nb) && is_reachable_box(spec, nb)) next.insert(std::move(nb));
      }
    }
    layer = std::move(next);
  }
  return layer.contains(goal);
}

// d = 2 only: box R(x, y) becomes cell (x/4 - y/2 + 1, x/4 + y/2 + 1) of a
// (K+1) x (K+1) grid; a jump becomes an up or right step.
inline GridInstance to_grid(const ChannelOccupancy& occ) {
  if (occ.spec.d != 2) throw std::invalid_argument("to_grid: channel must be two-dimensional");
  GridInstance g(occ.spec.K + 1, false);
  for (const BoxId& b : occ.occupied) {
    const int x = b.z[0];
    const int y = b.z[1];
    // x = 2k and y = k (mod 2), so 2x/4 +- y is even
    const int cx = (x / 2 - y) / 2 + 1;
    const int cy = (x / 2 + y) / 2 + 1;
    g.set(cx, cy, true);
  }
  return g;
}

}  // namespace udgo
