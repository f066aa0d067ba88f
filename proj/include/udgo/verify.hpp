#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "udgo/bench.hpp"
#include "udgo/channel.hpp"
#include "udgo/geometry.hpp"
#include "udgo/oracle.hpp"
#include "udgo/percolation.hpp"
#include "udgo/schedule.hpp"

namespace udgo {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  void add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

inline void print_report(std::ostream& os, const Report& rep) {
  std::string out;
  for (const Check& c : rep.checks) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name;
    if (!c.detail.empty()) out += ": " + c.detail;
    out += '\n';
  }
  os << out;
}

namespace detail {

// printf-style formatting for report lines; %g keeps them short and stable.
template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

inline bool same_distance(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

// Path from s to t whose hops are edges and whose length matches `distance`.
inline bool valid_path(const Instance& inst, const QueryResult& res, PointId s, PointId t) {
  if (std::isinf(res.distance)) return res.path.empty();
  if (res.path.empty() || res.path.front() != s || res.path.back() != t) return false;
  double len = 0.0;
  for (std::size_t k = 1; k < res.path.size(); ++k) {
    const double e = euclid_dist(inst.point(res.path[k - 1]), inst.point(res.path[k]));
    if (e > inst.radius()) return false;
    len += e;
  }
  return std::abs(len - res.distance) <= 1e-9;
}

}  // namespace detail

// ---- exactness --------------------------------------------------------------

struct ExactnessConfig {
  std::vector<std::size_t> ns{1000, 10000};
  std::vector<int> ds{2, 3};
  std::vector<double> rs{0.05, 0.1, 0.2};
  std::size_t queries = 200;
  std::uint64_t seed = 11;
  OracleParams params;
};

// Oracle, complete Dijkstra and A* agree on uniformly random query pairs.
inline Report check_exactness(const ExactnessConfig& cfg) {
  Report rep;
  std::uint64_t inst_seed = cfg.seed;
  for (std::size_t n : cfg.ns) {
    for (int d : cfg.ds) {
      for (double r : cfg.rs) {
        const Instance inst = gen_instance(n, d, r, inst_seed++);
        const CellIndex index = build_index(inst);
        const RadiusGrid grid(inst);
        Rng rng(inst.seed(), stream::queries);
        std::size_t mismatches = 0;
        std::size_t bad_paths = 0;
        std::size_t unreachable = 0;
        std::size_t fallbacks = 0;
        for (std::size_t q = 0; q < cfg.queries; ++q) {
          const auto s = static_cast<PointId>(rng.below(n));
          const auto t = static_cast<PointId>(rng.below(n));
          const QueryResult o = query(inst, index, grid, s, t, cfg.params);
          const QueryResult f = full_dijkstra(inst, grid, s, t);
          const QueryResult a = a_star(inst, grid, s, t);
          if (!detail::same_distance(o.distance, f.distance, 1e-9) ||
              !detail::same_distance(a.distance, f.distance, 1e-9)) {
            ++mismatches;
          }
          for (const QueryResult* res : {&o, &f, &a}) {
            if (!detail::valid_path(inst, *res, s, t)) ++bad_paths;
          }
          if (std::isinf(f.distance)) ++unreachable;
          if (o.stats.fallback_used) ++fallbacks;
        }
        rep.add(detail::fmt("exactness n=%zu d=%d r=%g", n, d, r), mismatches == 0 && bad_paths == 0,
                detail::fmt("%zu queries, %zu unreachable, %zu fallbacks, %zu mismatches, %zu bad paths",
                            cfg.queries, unreachable, fallbacks, mismatches, bad_paths));
      }
    }
  }
  return rep;
}

// ---- sublinear work -----------------------------------------------------------

struct ScalingConfig {
  std::vector<std::size_t> ns{25000, 100000, 400000};
  double r_factor = 2.0;  // r = r_factor n^(-1/4)
  int bucket = 2;         // w in [4r, 8r)
  std::size_t queries = 100;
  std::uint64_t seed = 21;
  double oracle_max_growth = 2.8;
  double dijkstra_min_growth = 3.2;
};

inline Report check_scaling(const ScalingConfig& cfg, std::vector<BenchRow>* rows_out = nullptr) {
  BenchConfig bc;
  bc.ns = cfg.ns;
  bc.d = 2;
  bc.rule = RadiusRule::quarter;
  bc.r_param = cfg.r_factor;
  bc.seed = cfg.seed;
  bc.queries = cfg.queries;
  bc.bucket = cfg.bucket;
  bc.params = OracleParams::practical();
  bc.algos = {Algo::oracle, Algo::dijkstra};
  const std::vector<BenchRow> rows = run_bench(bc);
  if (rows_out) *rows_out = rows;

  Report rep;
  for (std::size_t k = 1; k < cfg.ns.size(); ++k) {
    const BenchRow& o0 = rows[2 * (k - 1)];
    const BenchRow& d0 = rows[2 * (k - 1) + 1];
    const BenchRow& o1 = rows[2 * k];
    const BenchRow& d1 = rows[2 * k + 1];
    const double step = static_cast<double>(cfg.ns[k]) / static_cast<double>(cfg.ns[k - 1]);
    const double og = o1.mean_settled / o0.mean_settled;
    const double dg = d1.mean_settled / d0.mean_settled;
    rep.add(detail::fmt("oracle settled growth n=%zu->%zu", cfg.ns[k - 1], cfg.ns[k]), og <= cfg.oracle_max_growth,
            detail::fmt("%g -> %g, factor %.4f (limit %g, n step %g)", o0.mean_settled, o1.mean_settled, og,
                        cfg.oracle_max_growth, step));
    rep.add(detail::fmt("dijkstra settled growth n=%zu->%zu", cfg.ns[k - 1], cfg.ns[k]),
            dg >= cfg.dijkstra_min_growth,
            detail::fmt("%g -> %g, factor %.4f (limit %g, n step %g)", d0.mean_settled, d1.mean_settled, dg,
                        cfg.dijkstra_min_growth, step));
  }
  return rep;
}

// ---- stage counts -------------------------------------------------------------

struct StageCount {
  std::size_t nv = 0;  // |V_i|
  std::size_t ne = 0;  // |E_i|, undirected
};

// |V_i| and |E_i| for every stage i = 1..i_max of the s-t query, computed
// in one pass: each point gets the first stage whose box contains it and
// each edge is charged to the later of its endpoints' stages.
inline std::vector<StageCount> stage_counts(const Instance& inst, PointId s, PointId t, const OracleParams& params) {
  const double w = euclid_dist(inst.point(s), inst.point(t));
  const LocalFrame frame = build_frame(inst.point(s), inst.point(t));
  const QuerySchedule sched = make_schedule(inst.size(), inst.dim(), inst.radius(), w, params);
  const auto stages = static_cast<std::size_t>(sched.i_max);
  if (stages == 0) return {};
  std::vector<Box> boxes;
  for (long long i = 1; i <= sched.i_max; ++i) boxes.push_back(bounding_box(sched, frame, i));

  std::vector<PointId> members;
  std::vector<std::uint32_t> entry;  // 1-based stage per member
  std::vector<double> y(static_cast<std::size_t>(inst.dim()));
  for (PointId id = 0; id < inst.size(); ++id) {
    to_local(frame, inst.point(id), y);
    if (!boxes.back().contains_local(y)) continue;
    std::size_t lo = 0;
    std::size_t hi = stages - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (boxes[mid].contains_local(y)) hi = mid;
      else lo = mid + 1;
    }
    members.push_back(id);
    entry.push_back(static_cast<std::uint32_t>(lo + 1));
  }

  std::vector<StageCount> out(stages);
  for (std::uint32_t e : entry) ++out[e - 1].nv;

  // edges: point a counts neighbours b with (entry, id) lexicographically
  // smaller, so each pair is charged once, to the later stage
  const RadiusGrid grid(inst, members);
  const std::size_t m = grid.size();
  const auto ud = static_cast<std::size_t>(inst.dim());
  const double r2 = inst.radius() * inst.radius();
  std::vector<double> key(m);  // exact in a double: stage < 2^20, local id < 2^32
  for (std::size_t slot = 0; slot < m; ++slot) {
    const std::uint32_t v = grid.slot_local()[slot];
    key[slot] = static_cast<double>(entry[v]) * 4294967296.0 + static_cast<double>(v);
  }
  const auto& xs = grid.coords();
  const auto& start = grid.cell_start();
  const auto& offsets = grid.offsets();
  const auto& cells = grid.cells_per_axis();
  const std::size_t num_offsets = offsets.size() / ud;
  std::vector<int> cell(ud);
  std::vector<std::size_t> charged(stages, 0);
  for (std::uint32_t flat = 0; flat < grid.num_cells(); ++flat) {
    if (start[flat] == start[flat + 1]) continue;
    grid.cell_index(flat, cell);
    for (std::size_t o = 0; o < num_offsets; ++o) {
      std::uint32_t other = 0;
      bool inside = true;
      for (std::size_t j = ud; j-- > 0;) {
        const int c = cell[j] + offsets[o * ud + j];
        if (c < 0 || c >= cells[j]) {
          inside = false;
          break;
        }
        other = other * static_cast<std::uint32_t>(cells[j]) + static_cast<std::uint32_t>(c);
      }
      if (!inside) continue;
      for (std::uint32_t a = start[flat]; a < start[flat + 1]; ++a) {
        std::size_t hits = 0;
        for (std::uint32_t b = start[other]; b < start[other + 1]; ++b) {
          double dd = 0.0;
          for (std::size_t j = 0; j < ud; ++j) {
            const double diff = xs[j * m + a] - xs[j * m + b];
            dd += diff * diff;
          }
          hits += (dd <= r2) & (key[b] < key[a]) ? 1 : 0;
        }
        charged[entry[grid.slot_local()[a]] - 1] += hits;
      }
    }
  }
  std::size_t nv = 0;
  std::size_t ne = 0;
  for (std::size_t i = 0; i < stages; ++i) {
    nv += out[i].nv;
    ne += charged[i];
    out[i] = {nv, ne};
  }
  return out;
}

namespace detail {

// Area of a convex polygon clipped to the unit square (Sutherland-Hodgman).
inline double clipped_area(std::vector<std::array<double, 2>> poly) {
  auto clip = [&](int axis, double bound, bool keep_below) {
    std::vector<std::array<double, 2>> out;
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % k];
      const bool ina = keep_below ? a[axis] <= bound : a[axis] >= bound;
      const bool inb = keep_below ? b[axis] <= bound : b[axis] >= bound;
      if (ina) out.push_back(a);
      if (ina != inb) {
        const double f = (bound - a[axis]) / (b[axis] - a[axis]);
        out.push_back({a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])});
      }
    }
    poly = std::move(out);
  };
  clip(0, 0.0, false);
  clip(0, 1.0, true);
  clip(1, 0.0, false);
  clip(1, 1.0, true);
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return std::abs(twice) / 2.0;
}

}  // namespace detail

// vol(box ∩ [0,1]^2) for a two-dimensional box.
inline double box_area_in_unit_square(const Box& box) {
  if (box.frame.dim() != 2) throw std::invalid_argument("box_area_in_unit_square: box must be two-dimensional");
  std::vector<std::array<double, 2>> corners;
  for (auto [u, v] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
    const double y[2] = {u ? box.hi[0] : box.lo[0], v ? box.hi[1] : box.lo[1]};
    const Point p = to_global(box.frame, y);
    corners.push_back({p[0], p[1]});
  }
  return detail::clipped_area(std::move(corners));
}

struct CountsConfig {
  std::size_t n = 100000;
  double r = 0.05;
  std::array<double, 2> s{0.25, 0.5};
  std::array<double, 2> t{0.75, 0.5};
  std::size_t instances = 200;
  std::uint64_t seed = 31;
  OracleParams params;
  double sigmas = 4.0;
  double edge_factor = 32.0;
};

// s and t at ids 0 and 1, then n - 2 uniform points.
inline Instance instance_with_endpoints(std::size_t n, double r, std::span<const double> s,
                                        std::span<const double> t, std::uint64_t seed) {
  const std::size_t d = s.size();
  std::vector<double> coords(s.begin(), s.end());
  coords.insert(coords.end(), t.begin(), t.end());
  Rng rng(seed, stream::instance);
  for (std::size_t k = 2 * d; k < n * d; ++k) coords.push_back(rng.uniform());
  return Instance(static_cast<int>(d), r, std::move(coords), seed);
}

// Mean stage sizes over seeded instances against n vol(BB(i)) and the edge
// bound 32 E|V_i| min(n r^2, (w/r) i).
inline Report check_counts(const CountsConfig& cfg) {
  const LocalFrame frame = build_frame(cfg.s, cfg.t);
  const QuerySchedule sched = make_schedule(cfg.n, 2, cfg.r, frame.w, cfg.params);
  Report rep;
  const auto stages = static_cast<std::size_t>(sched.i_max);
  if (stages == 0) {
    rep.add("counts schedule", false, "i_max = 0, no stages to check");
    return rep;
  }
  std::vector<double> sum_v(stages, 0.0);
  std::vector<double> sum_e(stages, 0.0);
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const Instance inst = instance_with_endpoints(cfg.n, cfg.r, cfg.s, cfg.t, cfg.seed + k);
    const std::vector<StageCount> c = stage_counts(inst, 0, 1, cfg.params);
    for (std::size_t i = 0; i < stages; ++i) {
      sum_v[i] += static_cast<double>(c[i].nv);
      sum_e[i] += static_cast<double>(c[i].ne);
    }
  }
  const auto m = static_cast<double>(cfg.instances);
  const auto n = static_cast<double>(cfg.n);
  for (std::size_t i = 0; i < stages; ++i) {
    const auto stage = static_cast<long long>(i + 1);
    const double p = std::clamp(box_area_in_unit_square(bounding_box(sched, frame, stage)), 0.0, 1.0);
    const double expected = 2.0 + (n - 2.0) * p;
    const double sigma = std::sqrt((n - 2.0) * p * (1.0 - p) / m);
    const double mean_v = sum_v[i] / m;
    const double dev = std::abs(mean_v - expected);
    rep.add(detail::fmt("|V_%lld| mean vs n vol(BB)", stage), dev <= cfg.sigmas * sigma + 1e-9,
            detail::fmt("mean %.2f, expected %.2f, sigma %.3f, deviation %.2f sigma", mean_v, expected, sigma,
                        sigma > 0 ? dev / sigma : 0.0));
    const double cap = std::min(n * cfg.r * cfg.r, frame.w / cfg.r * static_cast<double>(stage));
    const double mean_e = sum_e[i] / m;
    const double ratio = mean_e / (expected * cap);
    rep.add(detail::fmt("|E_%lld| mean vs edge bound", stage), ratio <= cfg.edge_factor,
            detail::fmt("mean %.1f, E|V| min(nr^2, (w/r) i) = %.1f, ratio %.3f (limit %g)", mean_e, expected * cap,
                        ratio, cfg.edge_factor));
  }
  return rep;
}

// ---- percolation ----------------------------------------------------------------

// Probability of no up/right path by summing over all 2^(n^2) grids.
inline double enumerate_no_path_prob(int n, double q) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_no_path_prob: n must lie in [1, 4]");
  const int cells = n * n;
  double blocked = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    GridInstance g(n);
    double prob = 1.0;
    for (int c = 0; c < cells; ++c) {
      const bool off = (mask >> c & 1u) != 0;
      g.set(c % n + 1, c / n + 1, !off);
      prob *= off ? q : 1.0 - q;
    }
    if (!grid_reachable(g)) blocked += prob;
  }
  return blocked;
}

struct PercolationConfig {
  std::vector<int> bound_ns{8, 10, 12, 14};
  std::vector<double> bound_qs{std::ldexp(1.0, -20), std::ldexp(1.0, -24), std::ldexp(1.0, -28)};
  std::vector<double> enum_qs{0.05, 0.2, 0.35, 0.5, 0.8};
  int enum_max_n = 3;
  int mc_n = 8;
  std::vector<double> mc_qs{0.2, 0.35, 0.5};
  std::uint64_t mc_trials = 100000;
  std::uint64_t seed = 41;
};

inline Report check_percolation(const PercolationConfig& cfg) {
  Report rep;
  for (int n : cfg.bound_ns) {
    for (double q : cfg.bound_qs) {
      const double p = exact_no_path_prob(n, q);
      const NoPathBound b = no_path_bound(q);
      rep.add(detail::fmt("no-path bound n=%d q=2^%g", n, std::log2(q)), p <= b.contour && p <= b.simplified,
              detail::fmt("exact %.6g, contour %.6g, sqrt(cq) %.6g", p, b.contour, b.simplified));
    }
  }
  double worst = 0.0;
  for (int n = 1; n <= cfg.enum_max_n; ++n) {
    for (double q : cfg.enum_qs) worst = std::max(worst, std::abs(exact_no_path_prob(n, q) - enumerate_no_path_prob(n, q)));
  }
  rep.add("exact sweep vs enumeration", worst <= 1e-12,
          detail::fmt("n <= %d, max error %.3g", cfg.enum_max_n, worst));
  for (double q : cfg.mc_qs) {
    const double p = exact_no_path_prob(cfg.mc_n, q);
    const PercEstimate e = sample_no_path_prob(cfg.mc_n, q, cfg.mc_trials, cfg.seed);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.mc_trials));
    const double dev = std::abs(e.mean - p);
    rep.add(detail::fmt("exact sweep vs Monte Carlo n=%d q=%g", cfg.mc_n, q), dev <= 4.0 * sigma,
            detail::fmt("exact %.6f, sampled %.6f over %llu trials, %.2f sigma", p, e.mean,
                        static_cast<unsigned long long>(cfg.mc_trials), sigma > 0 ? dev / sigma : 0.0));
  }
  return rep;
}

// ---- channels -------------------------------------------------------------------

struct ChannelConfig {
  std::size_t trials = 10000;
  std::size_t max_points = 20000;
  int exhaustive_max_K = 3;
  int random_K = 12;
  std::size_t random_occupancies = 1000;
  std::uint64_t seed = 51;
};

// A d = 2 channel spec with exactly K, for occupancy experiments.
inline ChannelSpec channel_spec_with_K(int K) {
  const double r = 0.1;
  const double s[2] = {0.0, 0.0};
  for (double w : {r * (4.0 * K + 1.0) / 4.0, r * (4.0 * K + 0.5) / 4.0}) {
    const double t[2] = {w, 0.0};
    ChannelSpec spec = channel_spec(build_frame(s, t), r, max_h(2, r));
    if (spec.K == K) return spec;
  }
  throw std::logic_error("channel_spec_with_K: no width found");
}

inline Report check_channel(const ChannelConfig& cfg) {
  Report rep;

  // (a) whenever a channel path exists, dist(s, t) is within the certificate
  std::size_t present[2] = {0, 0};
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    Rng rng(cfg.seed, stream::trials_base + k);
    const int d = k % 2 == 0 ? 2 : 3;
    const double r = d == 2 ? 0.2 + 0.15 * rng.uniform() : 0.3 + 0.15 * rng.uniform();
    std::vector<double> s(static_cast<std::size_t>(d));
    std::vector<double> t(static_cast<std::size_t>(d));
    double w = 0.0;
    do {
      for (auto& x : s) x = rng.uniform();
      for (auto& x : t) x = rng.uniform();
      w = euclid_dist(s, t);
    } while (w < 1.5 * r);
    const double h = max_h(d, r) * (0.5 + 0.5 * rng.uniform());
    const auto [K, l] = channel_discretization(w, r);
    // about 1.5 to 5 points per box, so both outcomes occur
    const double per_box = 1.5 + 3.5 * rng.uniform();
    const double n_want = per_box / (l * std::pow(h, d - 1));
    const auto n = static_cast<std::size_t>(std::clamp(n_want, 2.0, static_cast<double>(cfg.max_points)));
    const Instance inst = instance_with_endpoints(n, r, s, t, rng.next());
    const ChannelOccupancy occ = occupancy(inst, 0, 1, h);
    if (!channel_path_exists(occ)) continue;
    ++present[d - 2];
    // exact on the full graph; early stop with the Euclidean heuristic keeps d=3 cheap
    const double dist = a_star(inst, 0, 1).distance;
    const double cert = length_certificate(occ.spec);
    worst = std::max(worst, dist / cert);
    if (!(dist <= cert * (1.0 + 1e-12))) ++violations;
  }
  rep.add("certificate soundness", violations == 0 && present[0] > 0 && present[1] > 0,
          detail::fmt("%zu trials, channel present %zu (d=2) + %zu (d=3), %zu violations, max dist/certificate %.4f",
                      cfg.trials, present[0], present[1], violations, worst));

  // (b) channel path <=> grid path after the 45-degree mapping
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::size_t positives = 0;
  for (int K = 1; K <= cfg.exhaustive_max_K; ++K) {
    const ChannelSpec spec = channel_spec_with_K(K);
    const std::vector<BoxId> boxes = reachable_boxes(spec);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << boxes.size()); ++mask) {
      std::vector<BoxId> on;
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        if (mask >> b & 1u) on.push_back(boxes[b]);
      }
      const ChannelOccupancy occ = ChannelOccupancy::from_boxes(spec, on);
      const bool a = channel_path_exists(occ);
      positives += a ? 1 : 0;
      if (a != grid_reachable(to_grid(occ))) ++mismatches;
      ++checked;
    }
  }
  rep.add("channel/grid equivalence, exhaustive", mismatches == 0,
          detail::fmt("K <= %d, %zu occupancies, %zu with a path, %zu mismatches", cfg.exhaustive_max_K, checked,
                      positives, mismatches));

  const ChannelSpec spec = channel_spec_with_K(cfg.random_K);
  const std::vector<BoxId> boxes = reachable_boxes(spec);
  Rng rng(cfg.seed, stream::queries);
  mismatches = 0;
  positives = 0;
  for (std::size_t k = 0; k < cfg.random_occupancies; ++k) {
    const double p = 0.5 + 0.5 * rng.uniform();
    std::vector<BoxId> on;
    for (const BoxId& b : boxes) {
      if (rng.uniform() < p) on.push_back(b);
    }
    const ChannelOccupancy occ = ChannelOccupancy::from_boxes(spec, on);
    const bool a = channel_path_exists(occ);
    positives += a ? 1 : 0;
    if (a != grid_reachable(to_grid(occ))) ++mismatches;
  }
  rep.add("channel/grid equivalence, random", mismatches == 0,
          detail::fmt("K = %d, %zu occupancies, %zu with a path, %zu mismatches", cfg.random_K,
                      cfg.random_occupancies, positives, mismatches));
  return rep;
}

// ---- schedule -------------------------------------------------------------------

struct ScheduleConfig {
  std::vector<std::size_t> ns{1000000, 10000000, 100000000};
  std::vector<int> ds{2, 3, 4};
  std::vector<double> rs{0.05, 0.1, 0.2};
  std::vector<double> w_over_r{1.5, 4.0, 10.0};
  long long max_stages = 2000;
};

// Paper-mode identities: W_ub(i) written through h_i equals the explicit
// formula, and n l h_i^(d-1) = c' i.
inline Report check_schedule(const ScheduleConfig& cfg) {
  Report rep;
  double worst_w = 0.0;
  double worst_exp = 0.0;
  double worst_log = 0.0;
  std::size_t schedules = 0;
  std::size_t stages = 0;
  for (std::size_t n : cfg.ns) {
    for (int d : cfg.ds) {
      for (double r : cfg.rs) {
        for (double f : cfg.w_over_r) {
          const double w = f * r;
          const QuerySchedule s = make_schedule(n, d, r, w, OracleParams::paper());
          if (s.i_max == 0) continue;
          ++schedules;
          for (long long i = 1; i <= std::min(s.i_max, cfg.max_stages); ++i) {
            ++stages;
            const double hi = s.h(i);
            const double via_h = w * std::sqrt(1.0 + 1600.0 * (d - 1) * (hi / r) * (hi / r));
            const double explicit_w = w_ub(s, i);
            worst_w = std::max(worst_w, std::abs(via_h - explicit_w) / explicit_w);
            const double lhs = static_cast<double>(n) * s.l * std::pow(hi, d - 1);
            const double rhs = s.c_prime * static_cast<double>(i);
            worst_exp = std::max(worst_exp, std::abs(std::exp(-lhs) - std::exp(-rhs)));
            worst_log = std::max(worst_log, std::abs(lhs - rhs) / rhs);
          }
        }
      }
    }
  }
  rep.add("W_ub via h_i vs explicit", schedules > 0 && worst_w <= 1e-12,
          detail::fmt("%zu schedules, %zu stages, max relative difference %.3g", schedules, stages, worst_w));
  rep.add("exp(-n l h_i^(d-1)) = exp(-c' i)", schedules > 0 && worst_exp <= 1e-9 && worst_log <= 1e-9,
          detail::fmt("max absolute difference %.3g, max relative exponent difference %.3g", worst_exp, worst_log));
  return rep;
}

// ---- counterexample ---------------------------------------------------------------

inline Report check_counterexample(const GridInstance& g) {
  Report rep;
  rep.add("fixture has no up/right path", !grid_reachable(g), "");
  rep.add("no antipath under 4-connectivity", !antipath_exists(g, 4), "");
  rep.add("no antipath under 8-connectivity", !antipath_exists(g, 8), "");
  return rep;
}

}  // namespace udgo
