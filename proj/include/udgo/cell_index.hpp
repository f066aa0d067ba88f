#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "udgo/geometry.hpp"

namespace udgo {

struct CellId {
  std::vector<int> idx;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

// Closed per-axis intervals in the coordinates of `frame`.
struct Box {
  LocalFrame frame;
  std::vector<double> lo;
  std::vector<double> hi;

  bool valid() const {
    if (lo.size() != hi.size() || lo.size() != frame.origin.dim()) return false;
    for (std::size_t j = 0; j < lo.size(); ++j) {
      if (!(lo[j] <= hi[j])) return false;
    }
    return true;
  }

  bool contains_local(std::span<const double> y) const {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] < lo[j] || y[j] > hi[j]) return false;
    }
    return true;
  }
};

namespace detail {

// All offsets in {-reach..reach}^d, row-major, d ints each.
inline std::vector<int> neighbor_offsets(int d, int reach) {
  const int side = 2 * reach + 1;
  std::size_t count = 1;
  for (int j = 0; j < d; ++j) count *= static_cast<std::size_t>(side);
  std::vector<int> out;
  out.reserve(count * static_cast<std::size_t>(d));
  std::vector<int> cur(static_cast<std::size_t>(d), -reach);
  for (std::size_t c = 0; c < count; ++c) {
    out.insert(out.end(), cur.begin(), cur.end());
    for (int j = 0; j < d; ++j) {
      if (++cur[static_cast<std::size_t>(j)] <= reach) break;
      cur[static_cast<std::size_t>(j)] = -reach;
    }
  }
  return out;
}

inline int axis_cell(double x, double cells_per_unit, int cells) {
  const auto c = static_cast<long long>(std::floor(x * cells_per_unit));
  return static_cast<int>(std::clamp<long long>(c, 0, cells - 1));
}

}  // namespace detail

// Uniform k-per-axis grid over [0,1]^d.  Each point is assigned to the cell
// min(floor(x_j k), k-1) along every axis; buckets support O(1) insert and
// swap-remove.
class CellIndex {
 public:
  CellIndex(const Instance& inst, int k) : d_(inst.dim()), k_(k) {
    if (k_ < 1) throw std::invalid_argument("cell index: k must be >= 1");
    double cells = 1.0;
    for (int j = 0; j < d_; ++j) cells *= k_;
    if (cells > static_cast<double>(1u << 28)) {
      throw std::invalid_argument("cell index: k^d too large");
    }
    num_cells_ = static_cast<std::uint32_t>(cells);
    buckets_.resize(num_cells_);
    cell_of_.reserve(inst.size());
    slot_.reserve(inst.size());
    for (PointId id = 0; id < inst.size(); ++id) attach(id, flat_cell_of_point(inst.point(id)));
  }

  int dim() const { return d_; }
  int k() const { return k_; }
  std::uint32_t num_cells() const { return num_cells_; }
  std::size_t size() const { return cell_of_.size(); }

  std::uint32_t flat_cell_of_point(std::span<const double> p) const {
    std::uint32_t flat = 0;
    for (int j = d_ - 1; j >= 0; --j) {
      flat = flat * static_cast<std::uint32_t>(k_) +
             static_cast<std::uint32_t>(detail::axis_cell(p[static_cast<std::size_t>(j)], k_, k_));
    }
    return flat;
  }

  std::uint32_t flatten(const CellId& c) const {
    std::uint32_t flat = 0;
    for (int j = d_ - 1; j >= 0; --j) {
      const int v = c.idx[static_cast<std::size_t>(j)];
      if (v < 0 || v >= k_) throw std::out_of_range("cell index: cell id out of range");
      flat = flat * static_cast<std::uint32_t>(k_) + static_cast<std::uint32_t>(v);
    }
    return flat;
  }

  CellId unflatten(std::uint32_t flat) const {
    CellId c{std::vector<int>(static_cast<std::size_t>(d_))};
    for (int j = 0; j < d_; ++j) {
      c.idx[static_cast<std::size_t>(j)] = static_cast<int>(flat % static_cast<std::uint32_t>(k_));
      flat /= static_cast<std::uint32_t>(k_);
    }
    return c;
  }

  std::uint32_t flat_cell_of(PointId id) const { return cell_of_.at(id); }
  CellId cell_of(PointId id) const { return unflatten(flat_cell_of(id)); }

  std::span<const PointId> bucket(std::uint32_t flat) const { return buckets_.at(flat); }
  std::span<const PointId> bucket(const CellId& c) const { return buckets_[flatten(c)]; }

  PointId insert_point(Instance& inst, std::span<const double> p) {
    const PointId id = inst.append(p);
    attach(id, flat_cell_of_point(p));
    return id;
  }

  // The last point of the instance takes over the removed id.
  void remove_point(Instance& inst, PointId id) {
    if (id >= cell_of_.size() || !inst.contains(id)) {
      throw std::out_of_range("cell index: unknown point id");
    }
    detach(id);
    const PointId moved = inst.swap_remove(id);
    if (moved != id) {
      const std::uint32_t cell = cell_of_[moved];
      const std::uint32_t slot = slot_[moved];
      buckets_[cell][slot] = id;
      cell_of_[id] = cell;
      slot_[id] = slot;
    }
    cell_of_.pop_back();
    slot_.pop_back();
  }

  // Full invariant check; O(n).
  bool consistent_with(const Instance& inst) const {
    if (inst.size() != cell_of_.size()) return false;
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < num_cells_; ++c) {
      total += buckets_[c].size();
      for (std::size_t s = 0; s < buckets_[c].size(); ++s) {
        const PointId id = buckets_[c][s];
        if (id >= cell_of_.size() || cell_of_[id] != c || slot_[id] != s) return false;
      }
    }
    if (total != cell_of_.size()) return false;
    for (PointId id = 0; id < inst.size(); ++id) {
      const CellId c = cell_of(id);
      auto p = inst.point(id);
      for (int j = 0; j < d_; ++j) {
        const double lo = static_cast<double>(c.idx[static_cast<std::size_t>(j)]) / k_;
        const double hi = static_cast<double>(c.idx[static_cast<std::size_t>(j)] + 1) / k_;
        if (p[static_cast<std::size_t>(j)] < lo || p[static_cast<std::size_t>(j)] > hi) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CellIndex&, const CellIndex&) = default;

 private:
  void attach(PointId id, std::uint32_t cell) {
    if (id != cell_of_.size()) throw std::logic_error("cell index: ids must be dense");
    cell_of_.push_back(cell);
    slot_.push_back(static_cast<std::uint32_t>(buckets_[cell].size()));
    buckets_[cell].push_back(id);
  }

  void detach(PointId id) {
    auto& b = buckets_[cell_of_[id]];
    const std::uint32_t slot = slot_[id];
    const PointId tail = b.back();
    b[slot] = tail;
    slot_[tail] = slot;
    b.pop_back();
  }

  int d_;
  int k_;
  std::uint32_t num_cells_ = 0;
  std::vector<std::vector<PointId>> buckets_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::uint32_t> slot_;
};

inline int default_cells_per_axis(std::size_t n, int d) {
  auto k = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 1.0 / d)));
  // pow can land a hair below an exact integer root
  while (std::pow(static_cast<double>(k + 1), d) <= static_cast<double>(n)) ++k;
  return std::max(k, 1);
}

inline CellIndex build_index(const Instance& inst, int k) { return CellIndex(inst, k); }
inline CellIndex build_index(const Instance& inst) {
  return CellIndex(inst, default_cells_per_axis(inst.size(), inst.dim()));
}

namespace detail {

// Cells whose centre, in box coordinates, lies within half a cell diagonal of
// every interval of the box.  Flood fill from `start` over the 3^d
// neighbourhood; the accepted region is convex so the fill reaches all of it.
inline std::vector<std::uint32_t> cover_cells(const CellIndex& index, const Box& box,
                                              std::uint32_t start) {
  const int d = index.dim();
  const int k = index.k();
  const auto ud = static_cast<std::size_t>(d);
  const double halo = std::sqrt(static_cast<double>(d)) / (2.0 * k);

  // local(centre(idx))_j = sum_i B_ji (idx_i + 1/2)/k - sum_i B_ji o_i
  std::vector<double> shift(ud, 0.0);
  for (std::size_t j = 0; j < ud; ++j) {
    for (std::size_t i = 0; i < ud; ++i) {
      shift[j] += box.frame.basis[j * ud + i] * (0.5 / k - box.frame.origin[i]);
    }
  }
  auto accepted = [&](const std::vector<int>& idx) {
    for (std::size_t j = 0; j < ud; ++j) {
      double y = shift[j];
      for (std::size_t i = 0; i < ud; ++i) {
        y += box.frame.basis[j * ud + i] * static_cast<double>(idx[i]) / k;
      }
      const double gap = std::max({0.0, box.lo[j] - y, y - box.hi[j]});
      if (gap > halo) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> out;
  CellId c = index.unflatten(start);
  if (!accepted(c.idx)) return out;

  const std::vector<int> offsets = neighbor_offsets(d, 1);
  const std::size_t num_offsets = offsets.size() / ud;
  std::unordered_set<std::uint32_t> seen{start};
  std::deque<std::uint32_t> queue{start};
  std::vector<int> nb(ud);
  while (!queue.empty()) {
    const std::uint32_t cur = queue.front();
    queue.pop_front();
    out.push_back(cur);
    c = index.unflatten(cur);
    for (std::size_t o = 0; o < num_offsets; ++o) {
      bool inside = true;
      for (std::size_t j = 0; j < ud; ++j) {
        nb[j] = c.idx[j] + offsets[o * ud + j];
        if (nb[j] < 0 || nb[j] >= k) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      std::uint32_t flat = 0;
      for (int j = d - 1; j >= 0; --j) {
        flat = flat * static_cast<std::uint32_t>(k) + static_cast<std::uint32_t>(nb[static_cast<std::size_t>(j)]);
      }
      if (seen.contains(flat)) continue;
      seen.insert(flat);
      if (accepted(nb)) queue.push_back(flat);
    }
  }
  return out;
}

}  // namespace detail

// Conservative cover of `box` by index cells, grown from `start` (the cell of
// the query source, which must lie in the box).
inline std::vector<CellId> cover_box(const CellIndex& index, const Box& box, const CellId& start) {
  if (!box.valid()) throw std::invalid_argument("cover_box: invalid box");
  std::vector<CellId> out;
  for (std::uint32_t flat : detail::cover_cells(index, box, index.flatten(start))) {
    out.push_back(index.unflatten(flat));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Ids of all points whose coordinates in box.frame lie inside the box, sorted.
// The cover starts from the cell of the frame origin.
inline std::vector<PointId> collect_vertices(const CellIndex& index, const Instance& inst,
                                             const Box& box) {
  if (!box.valid()) throw std::invalid_argument("collect_vertices: invalid box");
  const auto d = static_cast<std::size_t>(inst.dim());
  std::vector<double> origin(box.frame.origin.coords().begin(), box.frame.origin.coords().end());
  for (double& x : origin) x = std::clamp(x, 0.0, 1.0);
  std::vector<PointId> out;
  std::vector<double> y(d);
  for (std::uint32_t cell : detail::cover_cells(index, box, index.flat_cell_of_point(origin))) {
    for (PointId id : index.bucket(cell)) {
      to_local(box.frame, inst.point(id), y);
      if (box.contains_local(y)) out.push_back(id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<PointId> collect_vertices(const CellIndex& index, const Instance& inst,
                                             const LocalFrame& frame, const Box& box) {
  if (frame.origin != box.frame.origin || frame.basis != box.frame.basis) {
    throw std::invalid_argument("collect_vertices: box expressed in a different frame");
  }
  return collect_vertices(index, inst, box);
}

// Weighted adjacency over a subset of instance points in CSR form.  Local
// vertex v corresponds to instance point ids[v].
struct Adjacency {
  std::vector<PointId> ids;
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::unordered_map<PointId, std::uint32_t> local;

  std::size_t num_vertices() const { return ids.size(); }
  std::size_t num_edges() const { return targets.size() / 2; }

  std::uint32_t local_of(PointId id) const {
    auto it = local.find(id);
    if (it == local.end()) throw std::out_of_range("adjacency: id not in vertex set");
    return it->second;
  }
  bool has_vertex(PointId id) const { return local.contains(id); }

  std::vector<std::pair<PointId, double>> neighbors(PointId id) const {
    const std::uint32_t v = local_of(id);
    std::vector<std::pair<PointId, double>> out;
    for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) out.emplace_back(ids[targets[e]], weights[e]);
    return out;
  }
};

// Edges of the unit-disk graph induced by `ids`: every pair at distance <= r.
// Candidates come only from the same or adjacent r-cubes.
inline Adjacency build_edges(const Instance& inst, std::span<const PointId> ids, double r) {
  const int d = inst.dim();
  const auto ud = static_cast<std::size_t>(d);
  const double cubes_d = std::ceil(1.0 / r);
  if (std::pow(cubes_d, d) >= 9.0e18) throw std::invalid_argument("build_edges: r too small for cube keys");
  const auto cubes = static_cast<int>(cubes_d);
  const double r2 = r * r;

  Adjacency adj;
  adj.ids.assign(ids.begin(), ids.end());
  adj.local.reserve(ids.size());
  for (std::uint32_t v = 0; v < ids.size(); ++v) {
    if (!inst.contains(ids[v])) throw std::out_of_range("build_edges: unknown point id");
    if (!adj.local.emplace(ids[v], v).second) throw std::invalid_argument("build_edges: duplicate id");
  }

  std::vector<int> cube_idx(ids.size() * ud);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  auto key_of = [&](const int* idx) {
    std::uint64_t key = 0;
    for (int j = d - 1; j >= 0; --j) key = key * static_cast<std::uint64_t>(cubes) + static_cast<std::uint64_t>(idx[j]);
    return key;
  };
  for (std::uint32_t v = 0; v < ids.size(); ++v) {
    auto p = inst.point(ids[v]);
    int* idx = &cube_idx[v * ud];
    for (std::size_t j = 0; j < ud; ++j) idx[j] = detail::axis_cell(p[j], 1.0 / r, cubes);
    buckets[key_of(idx)].push_back(v);
  }

  const std::vector<int> offsets = detail::neighbor_offsets(d, 1);
  const std::size_t num_offsets = offsets.size() / ud;
  std::vector<int> nb(ud);
  adj.offsets.reserve(ids.size() + 1);
  for (std::uint32_t v = 0; v < ids.size(); ++v) {
    auto p = inst.point(ids[v]);
    const int* idx = &cube_idx[v * ud];
    for (std::size_t o = 0; o < num_offsets; ++o) {
      bool inside = true;
      for (std::size_t j = 0; j < ud; ++j) {
        nb[j] = idx[j] + offsets[o * ud + j];
        if (nb[j] < 0 || nb[j] >= cubes) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      auto it = buckets.find(key_of(nb.data()));
      if (it == buckets.end()) continue;
      for (std::uint32_t u : it->second) {
        if (u == v) continue;
        const double dd = squared_dist(p, inst.point(ids[u]));
        if (dd <= r2) {
          adj.targets.push_back(u);
          adj.weights.push_back(std::sqrt(dd));
        }
      }
    }
    adj.offsets.push_back(adj.targets.size());
  }
  return adj;
}

// Dense bucket grid over a point set (the whole instance or a subset), with
// cubic cells of side <= r / subdivisions where memory allows, stored
// cell-major so a neighbourhood scan walks contiguous memory.  Points are
// numbered locally 0..size()-1 in the order of `members()`.  Used by the
// searches, which never materialise the edge set.
class RadiusGrid {
 public:
  explicit RadiusGrid(const Instance& inst, int subdivisions = 4) : d_(inst.dim()), r_(inst.radius()) {
    members_.resize(inst.size());
    for (PointId id = 0; id < inst.size(); ++id) members_[id] = id;
    identity_ = true;
    build(inst, subdivisions);
  }

  // `ids` must be distinct; they are stored sorted.
  RadiusGrid(const Instance& inst, std::span<const PointId> ids, int subdivisions = 4)
      : d_(inst.dim()), r_(inst.radius()), members_(ids.begin(), ids.end()) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw std::invalid_argument("radius grid: duplicate id");
    }
    if (!members_.empty() && !inst.contains(members_.back())) throw std::out_of_range("radius grid: unknown point id");
    identity_ = members_.size() == inst.size();
    build(inst, subdivisions);
  }

  int dim() const { return d_; }
  double radius() const { return r_; }
  double side() const { return side_; }
  int reach() const { return reach_; }
  std::size_t size() const { return members_.size(); }
  std::size_t num_cells() const { return cell_start_.size() - 1; }

  const std::vector<PointId>& members() const { return members_; }
  bool has_point(PointId id) const {
    return identity_ ? id < members_.size() : std::binary_search(members_.begin(), members_.end(), id);
  }
  std::uint32_t local_of(PointId id) const {
    if (identity_) {
      if (id >= members_.size()) throw std::out_of_range("radius grid: id not in point set");
      return id;
    }
    auto it = std::lower_bound(members_.begin(), members_.end(), id);
    if (it == members_.end() || *it != id) throw std::out_of_range("radius grid: id not in point set");
    return static_cast<std::uint32_t>(it - members_.begin());
  }

  const std::vector<int>& cells_per_axis() const { return m_; }
  const std::vector<double>& origin() const { return lo_; }
  const std::vector<std::uint32_t>& cell_start() const { return cell_start_; }
  // slot -> local id, and axis-major coordinates coords()[j * size() + slot]
  const std::vector<std::uint32_t>& slot_local() const { return slot_local_; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<std::uint32_t>& cell_of() const { return cell_of_; }
  const std::vector<std::uint32_t>& slot_of() const { return slot_of_; }
  const std::vector<int>& offsets() const { return offsets_; }

  void cell_index(std::uint32_t flat, std::span<int> out) const {
    for (std::size_t j = 0; j < m_.size(); ++j) {
      out[j] = static_cast<int>(flat % static_cast<std::uint32_t>(m_[j]));
      flat /= static_cast<std::uint32_t>(m_[j]);
    }
  }

  // Number of unordered pairs at distance <= r.
  std::size_t count_edges() const {
    const auto ud = static_cast<std::size_t>(d_);
    const std::size_t n = size();
    const double r2 = r_ * r_;
    const std::size_t num_offsets = offsets_.size() / ud;
    std::vector<int> cell(ud);
    std::size_t twice = 0;
    for (std::uint32_t flat = 0; flat < num_cells(); ++flat) {
      if (cell_start_[flat] == cell_start_[flat + 1]) continue;
      cell_index(flat, cell);
      for (std::size_t o = 0; o < num_offsets; ++o) {
        std::uint32_t other = 0;
        bool inside = true;
        for (std::size_t j = ud; j-- > 0;) {
          const int c = cell[j] + offsets_[o * ud + j];
          if (c < 0 || c >= m_[j]) {
            inside = false;
            break;
          }
          other = other * static_cast<std::uint32_t>(m_[j]) + static_cast<std::uint32_t>(c);
        }
        if (!inside) continue;
        for (std::uint32_t a = cell_start_[flat]; a < cell_start_[flat + 1]; ++a) {
          std::size_t hits = 0;
          for (std::uint32_t b = cell_start_[other]; b < cell_start_[other + 1]; ++b) {
            double dd = 0.0;
            for (std::size_t j = 0; j < ud; ++j) {
              const double diff = coords_[j * n + a] - coords_[j * n + b];
              dd += diff * diff;
            }
            hits += dd <= r2 ? 1 : 0;
          }
          twice += hits;
        }
      }
    }
    return (twice - n) / 2;  // every point matches itself once
  }

 private:
  void build(const Instance& inst, int subdivisions) {
    if (subdivisions < 1) throw std::invalid_argument("radius grid: subdivisions must be >= 1");
    const auto ud = static_cast<std::size_t>(d_);
    const std::size_t n = members_.size();
    lo_.assign(ud, 0.0);
    std::vector<double> hi(ud, 0.0);
    if (n > 0) {
      for (std::size_t j = 0; j < ud; ++j) lo_[j] = hi[j] = inst.point(members_[0])[j];
      for (PointId id : members_) {
        auto p = inst.point(id);
        for (std::size_t j = 0; j < ud; ++j) {
          lo_[j] = std::min(lo_[j], p[j]);
          hi[j] = std::max(hi[j], p[j]);
        }
      }
    }
    // cells of side r / subdivisions, coarsened until there are at most
    // about 8 cells per point
    const double cap = 8.0 * static_cast<double>(n) + 64.0;
    side_ = r_ / subdivisions;
    m_.assign(ud, 1);
    while (true) {
      double cells = 1.0;
      for (std::size_t j = 0; j < ud; ++j) {
        const double mj = std::max(1.0, std::ceil((hi[j] - lo_[j]) / side_));
        m_[j] = static_cast<int>(std::min(mj, 1.0e9));
        cells *= mj;
      }
      if (cells <= cap) break;
      side_ *= 1.25;
    }
    reach_ = static_cast<int>(std::ceil(r_ / side_));
    std::size_t cells = 1;
    for (int mj : m_) cells *= static_cast<std::size_t>(mj);

    cell_of_.resize(n);
    std::vector<std::uint32_t> count(cells + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      auto p = inst.point(members_[v]);
      std::uint32_t flat = 0;
      for (std::size_t j = ud; j-- > 0;) {
        const auto c = static_cast<long long>(std::floor((p[j] - lo_[j]) / side_));
        flat = flat * static_cast<std::uint32_t>(m_[j]) +
               static_cast<std::uint32_t>(std::clamp<long long>(c, 0, m_[j] - 1));
      }
      cell_of_[v] = flat;
      ++count[flat + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) count[c + 1] += count[c];
    cell_start_ = count;
    slot_local_.resize(n);
    coords_.resize(n * ud);
    slot_of_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      const std::uint32_t slot = count[cell_of_[v]]++;
      slot_local_[slot] = v;
      slot_of_[v] = slot;
      auto p = inst.point(members_[v]);
      for (std::size_t j = 0; j < ud; ++j) coords_[j * n + slot] = p[j];
    }
    offsets_ = detail::neighbor_offsets(d_, reach_);
  }

  int d_;
  double r_;
  std::vector<PointId> members_;
  bool identity_ = false;
  std::vector<double> lo_;
  std::vector<int> m_;
  double side_ = 1.0;
  int reach_ = 1;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> slot_local_;
  std::vector<double> coords_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::uint32_t> slot_of_;
  std::vector<int> offsets_;
};

}  // namespace udgo
