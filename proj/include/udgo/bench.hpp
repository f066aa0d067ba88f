#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "udgo/geometry.hpp"
#include "udgo/oracle.hpp"
#include "udgo/rng.hpp"

namespace udgo {

// fixed: r = c; log: r = c (ln n / n)^(1/d); quarter: r = c n^(-1/4)
enum class RadiusRule { fixed, log, quarter };

inline RadiusRule parse_radius_rule(std::string_view s) {
  if (s == "fixed") return RadiusRule::fixed;
  if (s == "log") return RadiusRule::log;
  if (s == "quarter") return RadiusRule::quarter;
  throw std::invalid_argument("unknown r rule: " + std::string(s));
}

inline double radius_for(RadiusRule rule, double c, std::size_t n, int d) {
  const auto nd = static_cast<double>(n);
  switch (rule) {
    case RadiusRule::fixed: return c;
    case RadiusRule::log: return c * std::pow(std::log(nd) / nd, 1.0 / d);
    case RadiusRule::quarter: return c * std::pow(nd, -0.25);
  }
  return c;
}

// Below (ln n / n)^(1/d) the random graph is disconnected with high
// probability.
inline bool below_connectivity_threshold(std::size_t n, int d, double r) {
  return n >= 2 && r < radius_for(RadiusRule::log, 1.0, n, d);
}

enum class Algo { oracle, dijkstra, astar };

inline std::string_view algo_name(Algo a) {
  switch (a) {
    case Algo::oracle: return "oracle";
    case Algo::dijkstra: return "dijkstra";
    case Algo::astar: return "astar";
  }
  return "?";
}

struct QueryPair {
  PointId s = 0;
  PointId t = 0;
};

// `count` pairs with ||s - t|| in [2^b r, 2^(b+1) r), drawn from the query
// stream of `seed`.
inline std::vector<QueryPair> sample_bucket_queries(const Instance& inst, int bucket, std::size_t count,
                                                    std::uint64_t seed) {
  if (inst.size() < 2) throw std::invalid_argument("bench: instance needs at least two points");
  if (bucket < 0 || bucket > 30) throw std::invalid_argument("bench: bucket must lie in [0, 30]");
  const double lo = std::ldexp(inst.radius(), bucket);
  const double hi = 2.0 * lo;
  Rng rng(seed, stream::queries);
  std::vector<QueryPair> out;
  const std::uint64_t max_attempts = 10000 * (count + 1);
  for (std::uint64_t a = 0; a < max_attempts && out.size() < count; ++a) {
    const auto s = static_cast<PointId>(rng.below(inst.size()));
    const auto t = static_cast<PointId>(rng.below(inst.size()));
    const double w = euclid_dist(inst.point(s), inst.point(t));
    if (w >= lo && w < hi) out.push_back({s, t});
  }
  if (out.size() < count) throw std::runtime_error("bench: too few pairs in the requested distance bucket");
  return out;
}

struct BenchConfig {
  std::vector<std::size_t> ns{10000};
  int d = 2;
  RadiusRule rule = RadiusRule::fixed;
  double r_param = 0.1;
  std::uint64_t seed = 1;
  std::size_t queries = 100;
  int bucket = 2;
  OracleParams params;
  std::vector<Algo> algos{Algo::oracle, Algo::dijkstra, Algo::astar};
  bool timing = false;  // wall times are left at 0 unless requested, keeping output reproducible
};

struct BenchRow {
  std::size_t n = 0;
  int d = 2;
  double r = 0.0;
  double w_bucket = 0.0;  // lower end of the bucket in multiples of r
  Algo algo = Algo::oracle;
  double mean_settled = 0.0;
  double mean_touched_edges = 0.0;
  double mean_micros = 0.0;
  std::size_t queries = 0;
};

// Dijkstra here is the complete single-source run, the baseline whose work
// the oracle avoids.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.ns.empty()) throw std::invalid_argument("bench: no n given");
  if (cfg.queries < 1) throw std::invalid_argument("bench: queries must be >= 1");
  std::vector<BenchRow> rows;
  for (std::size_t n : cfg.ns) {
    const double r = radius_for(cfg.rule, cfg.r_param, n, cfg.d);
    const Instance inst = gen_instance(n, cfg.d, r, cfg.seed);
    const CellIndex index = build_index(inst);
    const RadiusGrid grid(inst);
    const std::vector<QueryPair> pairs = sample_bucket_queries(inst, cfg.bucket, cfg.queries, cfg.seed);
    for (Algo algo : cfg.algos) {
      BenchRow row{n, cfg.d, r, std::ldexp(1.0, cfg.bucket), algo, 0.0, 0.0, 0.0, pairs.size()};
      for (const QueryPair& q : pairs) {
        const auto start = std::chrono::steady_clock::now();
        QueryResult res;
        switch (algo) {
          case Algo::oracle: res = query(inst, index, grid, q.s, q.t, cfg.params); break;
          case Algo::dijkstra: res = full_dijkstra(inst, grid, q.s, q.t); break;
          case Algo::astar: res = a_star(inst, grid, q.s, q.t); break;
        }
        row.mean_settled += static_cast<double>(res.stats.settled);
        row.mean_touched_edges += static_cast<double>(res.stats.touched_edges);
        if (cfg.timing) row.mean_micros += detail::micros_since(start);
      }
      const auto k = static_cast<double>(pairs.size());
      row.mean_settled /= k;
      row.mean_touched_edges /= k;
      row.mean_micros /= k;
      rows.push_back(row);
    }
  }
  return rows;
}

inline constexpr std::string_view kBenchHeader =
    "n,d,r,w_bucket,algo,mean_settled,mean_touched_edges,mean_micros,queries";

inline void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  std::string out(kBenchHeader);
  out += '\n';
  for (const BenchRow& b : rows) {
    out += std::to_string(b.n) + ',' + std::to_string(b.d) + ',';
    detail::append_double(out, b.r);
    out += ',';
    detail::append_double(out, b.w_bucket);
    out += ',';
    out += algo_name(b.algo);
    out += ',';
    detail::append_double(out, b.mean_settled);
    out += ',';
    detail::append_double(out, b.mean_touched_edges);
    out += ',';
    detail::append_double(out, b.mean_micros);
    out += ',' + std::to_string(b.queries) + '\n';
  }
  os << out;
}

}  // namespace udgo
