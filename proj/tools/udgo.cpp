// udgo: generate instances, answer distance queries, benchmark and verify.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "udgo/udgo.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

udgo::OracleParams oracle_params(const std::string& mode, double kappa) {
  if (mode == "paper") return udgo::OracleParams::paper();
  return udgo::OracleParams::practical(kappa);
}

// Writes to `path`, or stdout when empty.
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  write(out);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

udgo::Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return udgo::read_instance(in);
}

const std::vector<std::string> kModes{"paper", "practical"};
const std::vector<std::string> kRules{"fixed", "log", "quarter"};
const std::vector<std::string> kAlgos{"oracle", "full-dijkstra", "astar"};
const std::vector<std::string> kSuites{"percolation", "channel", "schedule", "counts",
                                       "exactness",   "scaling", "counterexample"};

udgo::Algo parse_algo(const std::string& s) {
  if (s == "oracle") return udgo::Algo::oracle;
  if (s == "full-dijkstra") return udgo::Algo::dijkstra;
  return udgo::Algo::astar;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distance queries on random unit-disk graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a uniform random instance");
  std::size_t gen_n = 0;
  int gen_d = 2;
  double gen_r = 0.0;
  std::string gen_rule = "fixed";
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--d", gen_d, "dimension")->capture_default_str();
  gen->add_option("--r", gen_r, "radius, or the constant c of --r-rule")->required();
  gen->add_option("--r-rule", gen_rule, "fixed: r; log: r (ln n/n)^(1/d); quarter: r n^(-1/4)")
      ->check(CLI::IsMember(kRules))
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // query
  auto* qry = app.add_subcommand("query", "shortest s-t distance as JSON");
  std::string q_in;
  udgo::PointId q_s = 0;
  udgo::PointId q_t = 0;
  std::string q_mode = "practical";
  double q_kappa = 1.0;
  std::string q_algo = "oracle";
  bool q_timing = false;
  std::string q_out;
  qry->add_option("--in", q_in, "instance file")->required();
  qry->add_option("--s", q_s, "source point id")->required();
  qry->add_option("--t", q_t, "target point id")->required();
  qry->add_option("--mode", q_mode, "oracle schedule")->check(CLI::IsMember(kModes))->capture_default_str();
  qry->add_option("--kappa", q_kappa, "c' in practical mode")->capture_default_str();
  qry->add_option("--algo", q_algo, "algorithm")->check(CLI::IsMember(kAlgos))->capture_default_str();
  qry->add_flag("--timing", q_timing, "record wall times (output is then not reproducible)");
  qry->add_option("--out", q_out, "output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "settled-vertex scaling benchmark as CSV");
  std::vector<std::size_t> b_ns;
  int b_d = 2;
  double b_r = 0.1;
  std::string b_rule = "fixed";
  std::uint64_t b_seed = 1;
  std::size_t b_queries = 100;
  std::string b_mode = "practical";
  double b_kappa = 1.0;
  std::vector<std::string> b_algos = kAlgos;
  int b_bucket = 2;
  bool b_timing = false;
  std::string b_out;
  bench->add_option("--n", b_ns, "instance sizes (comma separated)")->required()->delimiter(',');
  bench->add_option("--d", b_d, "dimension")->capture_default_str();
  bench->add_option("--r", b_r, "radius, or the constant c of --r-rule")->capture_default_str();
  bench->add_option("--r-rule", b_rule, "radius rule")->check(CLI::IsMember(kRules))->capture_default_str();
  bench->add_option("--seed", b_seed, "seed for instances and queries")->capture_default_str();
  bench->add_option("--queries", b_queries, "queries per instance")->capture_default_str();
  bench->add_option("--mode", b_mode, "oracle schedule")->check(CLI::IsMember(kModes))->capture_default_str();
  bench->add_option("--kappa", b_kappa, "c' in practical mode")->capture_default_str();
  bench->add_option("--algo", b_algos, "algorithms (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember(kAlgos));
  bench->add_option("--bucket", b_bucket, "queries with ||s-t|| in [2^b r, 2^(b+1) r)")->capture_default_str();
  bench->add_flag("--timing", b_timing, "record wall times (output is then not reproducible)");
  bench->add_option("--out", b_out, "output file (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite;
  std::uint64_t v_seed = 0;
  bool v_quick = false;
  std::string v_grid;
  ver->add_option("suite", v_suite, "suite")->required()->check(CLI::IsMember(kSuites));
  ver->add_option("--seed", v_seed, "override the suite's default seed (0 keeps it)");
  ver->add_flag("--quick", v_quick, "smaller sizes, for smoke runs");
  ver->add_option("--grid", v_grid, "grid file for the counterexample suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const double r = udgo::radius_for(udgo::parse_radius_rule(gen_rule), gen_r, gen_n, gen_d);
      if (gen_n < 2) throw UsageError("--n must be >= 2");
      const udgo::Instance inst = udgo::gen_instance(gen_n, gen_d, r, gen_seed);
      if (udgo::below_connectivity_threshold(gen_n, gen_d, r)) {
        std::cerr << "warning: r = " << r << " is below (log n / n)^(1/d); the graph is disconnected with high "
                  << "probability\n";
      }
      with_output(gen_out, [&](std::ostream& os) { udgo::write_instance(os, inst); });
      return kOk;
    }

    if (*qry) {
      const udgo::Instance inst = load_instance(q_in);
      if (!inst.contains(q_s) || !inst.contains(q_t)) throw UsageError("--s/--t: unknown point id");
      const udgo::OracleParams params = oracle_params(q_mode, q_kappa);
      udgo::QueryResult res;
      switch (parse_algo(q_algo)) {
        case udgo::Algo::oracle: res = udgo::query(inst, udgo::build_index(inst), q_s, q_t, params); break;
        case udgo::Algo::dijkstra: res = udgo::full_dijkstra(inst, q_s, q_t); break;
        case udgo::Algo::astar: res = udgo::a_star(inst, q_s, q_t); break;
      }
      if (!q_timing) {
        for (auto& s : res.stats.stages) s.micros = 0.0;
      }
      with_output(q_out, [&](std::ostream& os) { os << udgo::to_json(res).dump() << '\n'; });
      return kOk;
    }

    if (*bench) {
      udgo::BenchConfig cfg;
      cfg.ns = b_ns;
      cfg.d = b_d;
      cfg.rule = udgo::parse_radius_rule(b_rule);
      cfg.r_param = b_r;
      cfg.seed = b_seed;
      cfg.queries = b_queries;
      cfg.bucket = b_bucket;
      cfg.params = oracle_params(b_mode, b_kappa);
      cfg.algos.clear();
      for (const auto& a : b_algos) cfg.algos.push_back(parse_algo(a));
      cfg.timing = b_timing;
      const auto rows = udgo::run_bench(cfg);
      with_output(b_out, [&](std::ostream& os) { udgo::write_csv(os, rows); });
      return kOk;
    }

    if (*ver) {
      udgo::Report rep;
      auto seeded = [&](std::uint64_t def) { return v_seed != 0 ? v_seed : def; };
      if (v_suite == "percolation") {
        udgo::PercolationConfig c;
        c.seed = seeded(c.seed);
        if (v_quick) c.mc_trials = 10000;
        rep = udgo::check_percolation(c);
      } else if (v_suite == "channel") {
        udgo::ChannelConfig c;
        c.seed = seeded(c.seed);
        if (v_quick) {
          c.trials = 200;
          c.exhaustive_max_K = 2;
          c.random_occupancies = 100;
        }
        rep = udgo::check_channel(c);
      } else if (v_suite == "schedule") {
        rep = udgo::check_schedule({});
      } else if (v_suite == "counts") {
        udgo::CountsConfig c;
        c.seed = seeded(c.seed);
        if (v_quick) c.instances = 10;
        rep = udgo::check_counts(c);
      } else if (v_suite == "exactness") {
        udgo::ExactnessConfig c;
        c.seed = seeded(c.seed);
        if (v_quick) {
          c.ns = {1000};
          c.queries = 20;
        }
        rep = udgo::check_exactness(c);
      } else if (v_suite == "scaling") {
        udgo::ScalingConfig c;
        c.seed = seeded(c.seed);
        if (v_quick) {
          c.ns = {2500, 10000};
          c.queries = 10;
        }
        rep = udgo::check_scaling(c);
      } else {
        if (v_grid.empty()) throw UsageError("the counterexample suite needs --grid");
        std::ifstream in(v_grid);
        if (!in) throw UsageError("cannot open " + v_grid);
        rep = udgo::check_counterexample(udgo::read_grid(in));
      }
      udgo::print_report(std::cout, rep);
      return rep.passed() ? kOk : kVerifyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
