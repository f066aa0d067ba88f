#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "udgo/cell_index.hpp"
#include "udgo/geometry.hpp"
#include "udgo/schedule.hpp"

namespace udgo {

struct StageRecord {
  long long i = 0;            // 1-based stage; i_max + 1 marks the fallback
  std::size_t nv = 0;         // |V_i|
  std::size_t ne = 0;         // |E_i| (undirected)
  std::size_t settled = 0;
  double micros = 0.0;
};

struct QueryStats {
  std::vector<StageRecord> stages;
  bool fallback_used = false;
  std::optional<long long> result_stage;
  std::size_t settled = 0;        // summed over all stages
  std::size_t touched_edges = 0;  // edges relaxed, summed
};

struct QueryResult {
  double distance = kInfinity;
  std::vector<PointId> path;  // s ... t, empty iff unreachable
  QueryStats stats;
};

struct DijkstraOutput {
  double distance = kInfinity;
  std::vector<std::uint32_t> pred;  // local predecessor, self for s and unreached
  std::size_t settled = 0;
  std::size_t relaxed = 0;
};

namespace detail {

struct HeapEntry {
  double key;
  PointId id;
  std::uint32_t v;
  // min-heap on (key, id): lower point id wins ties
  friend bool operator>(const HeapEntry& a, const HeapEntry& b) {
    return a.key > b.key || (a.key == b.key && a.id > b.id);
  }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

}  // namespace detail

// Dijkstra on an explicit adjacency, stopping once t is settled.
inline DijkstraOutput bounded_dijkstra(const Adjacency& adj, PointId s_id, PointId t_id) {
  const std::uint32_t s = adj.local_of(s_id);
  // t outside the vertex set: never settled
  const std::uint32_t t = adj.has_vertex(t_id) ? adj.local_of(t_id) : std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = adj.num_vertices();

  DijkstraOutput out;
  out.pred.resize(n);
  for (std::uint32_t v = 0; v < n; ++v) out.pred[v] = v;
  std::vector<double> dist(n, kInfinity);
  std::vector<char> done(n, 0);
  detail::MinHeap heap;
  dist[s] = 0.0;
  heap.push({0.0, adj.ids[s], s});
  while (!heap.empty()) {
    const auto [du, uid, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    ++out.settled;
    if (u == t) {
      out.distance = du;
      break;
    }
    for (std::size_t e = adj.offsets[u]; e < adj.offsets[u + 1]; ++e) {
      const std::uint32_t v = adj.targets[e];
      if (done[v]) continue;
      ++out.relaxed;
      const double nd = du + adj.weights[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        out.pred[v] = u;
        heap.push({nd, adj.ids[v], v});
      }
    }
  }
  return out;
}

namespace detail {

inline std::vector<PointId> local_path(const Adjacency& adj, const DijkstraOutput& res, PointId t_id) {
  std::vector<PointId> path;
  std::uint32_t v = adj.local_of(t_id);
  path.push_back(adj.ids[v]);
  while (res.pred[v] != v) {
    v = res.pred[v];
    path.push_back(adj.ids[v]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Best-first search over the implicit unit-disk graph.  Settled points are
// swapped out of their grid cell, so each neighbourhood scan only visits
// points still open.  Each cell also keeps an upper bound on the tentative
// distances of its open points; a cell is skipped when d(u) plus its gap to
// u cannot beat that bound.  `heuristic` must be consistent (0 gives
// Dijkstra).
struct GridSearchResult {
  double distance = kInfinity;
  std::vector<PointId> path;
  std::size_t settled = 0;
  std::size_t relaxed = 0;
};

#if defined(__AVX__)
inline constexpr int kLanes = 4;
#else
inline constexpr int kLanes = 2;
#endif
using VecD = double __attribute__((vector_size(8 * kLanes)));
using VecL = long long __attribute__((vector_size(8 * kLanes)));

// One open cell against the settled point p: counts points within r, reports
// whether any tentative distance might improve (a slightly loose squared
// test, never rejecting an improvement the exact test would accept) and
// returns the max tentative distance in the cell.
template <int D>
bool scan_cell(const double* __restrict xs, std::size_t n, const double* p_in, std::size_t ud, std::uint32_t begin,
               std::uint32_t end, const double* __restrict tent, double du, double r2, double& bound_out,
               std::size_t& edges_out) {
  constexpr double kLoose = 1.0 + 1e-9;
  double bound = 0.0;
  std::size_t edges = 0;
  bool hit = false;
  auto scalar = [&](std::uint32_t slot) {
    double dd = 0.0;
    for (std::size_t j = 0; j < ud; ++j) {
      const double diff = xs[j * n + slot] - p_in[j];
      dd += diff * diff;
    }
    const double tv = tent[slot];
    const double slack = tv - du;
    const bool edge = dd <= r2;
    hit |= edge && slack > 0.0 && dd < slack * slack * kLoose;
    edges += edge ? 1 : 0;
    bound = std::max(bound, tv);
  };
  std::uint32_t slot = begin;
  if constexpr (D > 0) {
    std::array<VecD, D> p;
    for (std::size_t j = 0; j < D; ++j) p[j] = VecD{} + p_in[j];
    const VecD vr2 = VecD{} + r2;
    const VecD vdu = VecD{} + du;
    VecD vbound{};
    VecL vedges{};
    VecL vhit{};
    for (; slot + kLanes <= end; slot += kLanes) {
      VecD dd{};
      for (std::size_t j = 0; j < D; ++j) {
        VecD x;
        std::memcpy(&x, xs + j * n + slot, sizeof x);
        const VecD diff = x - p[j];
        dd += diff * diff;
      }
      VecD tv;
      std::memcpy(&tv, tent + slot, sizeof tv);
      const VecD slack = tv - vdu;
      const VecL edge = dd <= vr2;
      vhit |= edge & (slack > 0.0) & (dd < slack * slack * kLoose);
      vedges -= edge;
      const VecL more = tv > vbound;
      vbound = reinterpret_cast<VecD>((reinterpret_cast<VecL>(tv) & more) | (reinterpret_cast<VecL>(vbound) & ~more));
    }
    for (int k = 0; k < kLanes; ++k) {
      bound = std::max(bound, vbound[k]);
      edges += static_cast<std::size_t>(vedges[k]);
      hit |= vhit[k] != 0;
    }
  }
  for (; slot < end; ++slot) scalar(slot);
  bound_out = bound;
  edges_out = edges;
  return hit;
}

// D > 0 fixes the dimension at compile time; D == 0 reads it from the grid.
template <int D, class Heuristic>
GridSearchResult grid_search_dim(const RadiusGrid& grid, PointId s_id, PointId t_id, bool stop_at_target,
                                 Heuristic&& heuristic) {
  const int d = D > 0 ? D : grid.dim();
  const auto ud = static_cast<std::size_t>(d);
  const std::size_t n = grid.size();
  const double r = grid.radius();
  const double r2 = r * r;
  const double side = grid.side();
  const auto& m = grid.cells_per_axis();
  const auto& lo = grid.origin();
  const auto& members = grid.members();
  const std::uint32_t s = grid.local_of(s_id);
  const std::uint32_t t = grid.local_of(t_id);

  // slot-ordered working copies; tent[slot] is the tentative distance.
  // Vertices are local ids, whose order matches the point ids.
  std::vector<std::uint32_t> ids = grid.slot_local();
  std::vector<double> xs = grid.coords();
  std::vector<double> tent(n, kInfinity);
  std::vector<std::uint32_t> slot_of = grid.slot_of();
  const auto& cell_start = grid.cell_start();
  std::vector<std::uint32_t> open_end(cell_start.begin() + 1, cell_start.end());
  std::vector<double> cell_bound(open_end.size(), kInfinity);
  const auto& offsets = grid.offsets();
  const std::size_t num_offsets = offsets.size() / ud;

  std::vector<std::uint32_t> pred(n);
  std::vector<double> final_dist(n, kInfinity);
  for (std::uint32_t v = 0; v < n; ++v) pred[v] = v;

  GridSearchResult out;
  MinHeap heap;
  tent[slot_of[s]] = 0.0;
  heap.push({heuristic(s_id), s_id, s});
  std::vector<int> cell(ud);
  std::vector<double> p(ud);

  while (!heap.empty()) {
    const std::uint32_t u = heap.top().v;
    heap.pop();
    if (final_dist[u] != kInfinity) continue;
    const std::uint32_t su = slot_of[u];
    const double du = tent[su];
    final_dist[u] = du;
    ++out.settled;

    // move u behind the open range of its cell
    const std::uint32_t cu = grid.cell_of()[u];
    const std::uint32_t last = --open_end[cu];
    if (su != last) {
      const std::uint32_t other = ids[last];
      std::swap(ids[su], ids[last]);
      std::swap(tent[su], tent[last]);
      for (std::size_t j = 0; j < ud; ++j) std::swap(xs[j * n + su], xs[j * n + last]);
      slot_of[other] = su;
      slot_of[u] = last;
    }
    for (std::size_t j = 0; j < ud; ++j) p[j] = xs[j * n + last];
    if (u == t && stop_at_target) break;

    grid.cell_index(cu, cell);
    for (std::size_t o = 0; o < num_offsets; ++o) {
      bool inside = true;
      double gap2 = 0.0;
      std::uint32_t flat = 0;
      for (int j = d - 1; j >= 0; --j) {
        const auto uj = static_cast<std::size_t>(j);
        const int off = offsets[o * ud + uj];
        const int c = cell[uj] + off;
        if (c < 0 || c >= m[uj]) {
          inside = false;
          break;
        }
        double g = 0.0;
        if (off > 0) g = lo[uj] + c * side - p[uj];
        else if (off < 0) g = p[uj] - (lo[uj] + (c + 1) * side);
        if (g > 0.0) gap2 += g * g;
        flat = flat * static_cast<std::uint32_t>(m[uj]) + static_cast<std::uint32_t>(c);
      }
      if (!inside || gap2 > r2) continue;
      if (du + std::sqrt(gap2) >= cell_bound[flat]) continue;
      const std::uint32_t begin = cell_start[flat];
      const std::uint32_t end = open_end[flat];
      // branch-free pass: count edges, look for any possible improvement and
      // take the max tentative distance (a valid bound even if some improve)
      double bound = 0.0;
      std::size_t edges = 0;
      const bool hit = scan_cell<D>(xs.data(), n, p.data(), ud, begin, end, tent.data(), du, r2, bound, edges);
      out.relaxed += edges;
      if (hit) {
        bound = 0.0;
        for (std::uint32_t slot = begin; slot < end; ++slot) {
          double dd = 0.0;
          for (std::size_t j = 0; j < ud; ++j) {
            const double diff = xs[j * n + slot] - p[j];
            dd += diff * diff;
          }
          if (dd <= r2) {
            const double nd = du + std::sqrt(dd);
            if (nd < tent[slot]) {
              tent[slot] = nd;
              const std::uint32_t v = ids[slot];
              pred[v] = u;
              heap.push({nd + heuristic(members[v]), members[v], v});
            }
          }
          bound = std::max(bound, tent[slot]);
        }
      }
      cell_bound[flat] = bound;
    }
  }

  if (final_dist[t] != kInfinity) {
    out.distance = final_dist[t];
    for (std::uint32_t v = t;; v = pred[v]) {
      out.path.push_back(members[v]);
      if (pred[v] == v) break;
    }
    std::reverse(out.path.begin(), out.path.end());
  }
  return out;
}

template <class Heuristic>
GridSearchResult grid_search(const RadiusGrid& grid, PointId s, PointId t, bool stop_at_target,
                             Heuristic&& heuristic) {
  switch (grid.dim()) {
    case 2: return grid_search_dim<2>(grid, s, t, stop_at_target, heuristic);
    case 3: return grid_search_dim<3>(grid, s, t, stop_at_target, heuristic);
    default: return grid_search_dim<0>(grid, s, t, stop_at_target, heuristic);
  }
}

inline QueryResult as_result(GridSearchResult&& g, std::size_t n, double micros) {
  QueryResult res;
  res.distance = g.distance;
  res.path = std::move(g.path);
  res.stats.settled = g.settled;
  res.stats.touched_edges = g.relaxed;
  res.stats.stages.push_back({0, n, g.relaxed, g.settled, micros});
  return res;
}

inline void check_ids(const Instance& inst, PointId s, PointId t) {
  if (!inst.contains(s) || !inst.contains(t)) throw std::out_of_range("query: unknown point id");
}

inline double micros_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

// Dijkstra from s over the whole implicit graph.  By default it settles every
// vertex reachable from s (complete single-source run); with
// stop_at_target it returns as soon as t is settled.
inline QueryResult full_dijkstra(const Instance& inst, const RadiusGrid& grid, PointId s, PointId t,
                                 bool stop_at_target = false) {
  detail::check_ids(inst, s, t);
  const auto start = std::chrono::steady_clock::now();
  auto g = detail::grid_search(grid, s, t, stop_at_target, [](PointId) { return 0.0; });
  return detail::as_result(std::move(g), inst.size(), detail::micros_since(start));
}

inline QueryResult full_dijkstra(const Instance& inst, PointId s, PointId t, bool stop_at_target = false) {
  detail::check_ids(inst, s, t);
  return full_dijkstra(inst, RadiusGrid(inst), s, t, stop_at_target);
}

// A* with the straight-line distance to t, which is consistent for Euclidean
// edge weights.
inline QueryResult a_star(const Instance& inst, const RadiusGrid& grid, PointId s, PointId t) {
  detail::check_ids(inst, s, t);
  const auto start = std::chrono::steady_clock::now();
  const auto target = inst.point(t);
  auto g = detail::grid_search(grid, s, t, true, [&](PointId v) {
    return std::sqrt(squared_dist(inst.point(v), target));
  });
  return detail::as_result(std::move(g), inst.size(), detail::micros_since(start));
}

inline QueryResult a_star(const Instance& inst, PointId s, PointId t) {
  detail::check_ids(inst, s, t);
  return a_star(inst, RadiusGrid(inst), s, t);
}

// Exact s-t distance: Dijkstra on G(i) = G restricted to BB(i) for
// i = 1..i_max, accepting the first stage whose distance is at most W_ub(i);
// otherwise Dijkstra on the whole graph.
namespace detail {

inline QueryResult query_impl(const Instance& inst, const CellIndex& index, const RadiusGrid* grid, PointId s,
                              PointId t, const OracleParams& params) {
  check_ids(inst, s, t);
  if (index.size() != inst.size() || index.dim() != inst.dim()) {
    throw std::invalid_argument("query: index does not match instance");
  }
  QueryResult res;
  if (s == t) {
    res.distance = 0.0;
    res.path = {s};
    return res;
  }
  const double r = inst.radius();
  const double w = euclid_dist(inst.point(s), inst.point(t));
  if (w <= r) {
    res.distance = w;
    res.path = {s, t};
    return res;
  }

  const LocalFrame frame = build_frame(inst.point(s), inst.point(t));
  const QuerySchedule sched = make_schedule(inst.size(), inst.dim(), r, w, params);
  for (long long i = 1; i <= sched.i_max; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const double W = w_ub(sched, i);
    const Box box = bounding_box_for(frame, W);
    const std::vector<PointId> vi = collect_vertices(index, inst, box);
    // E_i stays implicit in the stage grid; only its size is recorded
    const RadiusGrid gi(inst, vi);
    const std::size_t ne = gi.count_edges();
    auto g = grid_search(gi, s, t, true, [](PointId) { return 0.0; });
    res.stats.stages.push_back({i, vi.size(), ne, g.settled, micros_since(start)});
    res.stats.settled += g.settled;
    res.stats.touched_edges += g.relaxed;
    if (g.distance <= W) {
      res.distance = g.distance;
      res.path = std::move(g.path);
      res.stats.result_stage = i;
      return res;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::optional<RadiusGrid> own;
  if (grid == nullptr) grid = &own.emplace(inst);
  auto g = grid_search(*grid, s, t, true, [](PointId) { return 0.0; });
  res.stats.fallback_used = true;
  res.stats.stages.push_back({sched.i_max + 1, inst.size(), g.relaxed, g.settled, micros_since(start)});
  res.stats.settled += g.settled;
  res.stats.touched_edges += g.relaxed;
  res.distance = g.distance;
  res.path = std::move(g.path);
  return res;
}

}  // namespace detail

inline QueryResult query(const Instance& inst, const CellIndex& index, const RadiusGrid& grid, PointId s,
                         PointId t, const OracleParams& params) {
  return detail::query_impl(inst, index, &grid, s, t, params);
}

// Builds the full-graph grid only if the fallback runs.
inline QueryResult query(const Instance& inst, const CellIndex& index, PointId s, PointId t,
                         const OracleParams& params) {
  return detail::query_impl(inst, index, nullptr, s, t, params);
}

}  // namespace udgo
