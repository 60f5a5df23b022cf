#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsclust/anneal.hpp"
#include "dsclust/benchmark.hpp"
#include "dsclust/errors.hpp"
#include "dsclust/evidence.hpp"
#include "dsclust/graph.hpp"
#include "dsclust/io.hpp"
#include "dsclust/oracle.hpp"
#include "dsclust/rng.hpp"

namespace {

using namespace dsclust;

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotFrozen = 2;
constexpr int kExitTooLarge = 3;

std::string int_array_json(const std::vector<int>& xs) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ',';
    out << xs[i];
  }
  out << ']';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::vector<SimpleSupport> load_evidence(const std::string& path) {
  if (path.empty()) return read_evidence(std::cin);
  return read_evidence_file(path);
}

// Flat key/value config document for solve. Explicit flags win over the
// file, the file wins over built-in defaults.
void merge_config_file(const std::string& path, const CLI::App& solve,
                       AnnealConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_object()) throw std::runtime_error("config must be a flat JSON object");
  auto flag_given = [&solve](const std::string& name) {
    return solve.get_option(name)->count() > 0;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "q") {
      if (!flag_given("--q")) cfg.q = value.get<int>();
    } else if (key == "tau") {
      if (!flag_given("--tau")) cfg.tau = value.get<double>();
    } else if (key == "epsilon") {
      if (!flag_given("--epsilon")) cfg.epsilon = value.get<double>();
    } else if (key == "alpha") {
      if (!flag_given("--alpha")) cfg.alpha = value.get<double>();
    } else if (key == "gamma") {
      if (!flag_given("--gamma")) cfg.gamma = value.get<double>();
    } else if (key == "lambda") {
      if (!flag_given("--lambda")) cfg.lambda = value.get<double>();
    } else if (key == "sweep_tol") {
      if (!flag_given("--sweep-tol")) cfg.sweep_tol = value.get<double>();
    } else if (key == "saturation_tol") {
      if (!flag_given("--saturation-tol")) cfg.saturation_tol = value.get<double>();
    } else if (key == "max_sweeps_per_temp") {
      if (!flag_given("--max-sweeps")) cfg.max_sweeps_per_temp = value.get<int>();
    } else if (key == "max_temps") {
      if (!flag_given("--max-temps")) cfg.max_temps = value.get<int>();
    } else if (key == "seed") {
      if (!flag_given("--seed")) cfg.seed = value.get<std::uint64_t>();
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
}

int run_generate(int k, std::uint64_t seed, const std::string& out_path) {
  BenchmarkInstance inst = generate_instance(k, seed);
  std::ostringstream buf;
  write_evidence(buf, inst.evidence);
  if (out_path.empty())
    std::cout << buf.str();
  else
    write_text_file(out_path, buf.str());
  return kExitOk;
}

int run_solve(const std::string& in_path, const AnnealConfig& cfg) {
  std::vector<SimpleSupport> evidence = load_evidence(in_path);
  cfg.validate();
  ClusterAssignment a;
  if (evidence.size() == 1) {
    // Nothing to anneal; one piece sits alone in cluster 1.
    a.partition = Partition{{1}, cfg.q};
    InteractionMatrix j;
    j.n = 1;
    j.j.assign(1, 0.0);
    a.energy = energy(a.partition, j, cfg.alpha, cfg.gamma);
    a.saturation = 1.0;
    a.frozen = true;
  } else {
    a = anneal(evidence, cfg);
  }
  double mcf = metaconflict(evidence, a.partition);
  std::cout << "{\"partition\":" << int_array_json(a.partition.assignment)
            << ",\"cluster_count\":" << a.partition.cluster_count
            << ",\"metaconflict\":" << format_double(mcf)
            << ",\"energy\":" << format_double(a.energy)
            << ",\"saturation\":" << format_double(a.saturation)
            << ",\"final_temperature\":" << format_double(a.final_temperature)
            << ",\"frozen\":" << (a.frozen ? "true" : "false")
            << ",\"sweeps_total\":" << a.sweeps_total
            << ",\"temps_total\":" << a.temps_total << "}\n";
  return a.frozen ? kExitOk : kExitNotFrozen;
}

int run_oracle(const std::string& in_path, int q, const std::string& objective) {
  std::vector<SimpleSupport> evidence = load_evidence(in_path);
  Objective obj =
      objective == "linearized" ? Objective::kLinearized : Objective::kExact;
  OracleResult r = enumerate_min(evidence, q, obj);
  std::cout << "{\"objective\":\"" << objective
            << "\",\"best_partition\":" << int_array_json(r.best_partition.assignment)
            << ",\"min_metaconflict\":" << format_double(r.min_metaconflict)
            << ",\"min_linearized\":" << format_double(r.min_linearized)
            << ",\"linearized_argmin\":"
            << int_array_json(r.linearized_argmin.assignment)
            << ",\"partitions_scanned\":" << r.partitions_scanned << "}\n";
  return kExitOk;
}

int run_benchmark(int k_min, int k_max, int runs, std::uint64_t seed, int jobs,
                  const std::string& out_path, const std::string& runs_out) {
  if (k_min > k_max) throw std::invalid_argument("--k-min must be <= --k-max");
  std::vector<SuiteSummary> rows;
  for (int k = k_min; k <= k_max; ++k)
    rows.push_back(run_suite(k, runs, benchmark_config(k, seed), jobs));
  std::string csv = benchmark_csv(rows);
  if (out_path.empty())
    std::cout << csv;
  else
    write_text_file(out_path, csv);
  if (!runs_out.empty()) write_text_file(runs_out, benchmark_jsonl(rows));
  return kExitOk;
}

// Components of the occupied edges of one bond state (path-halving forest).
int occupied_component_count(const BondGraph& g, const BondState& b) {
  std::vector<int> parent(g.n);
  for (int i = 0; i < g.n; ++i) parent[i] = i;
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!b.occupied[e]) continue;
    int a = find(g.edges[e].first);
    int c = find(g.edges[e].second);
    if (a != c) parent[a] = c;
  }
  int count = 0;
  for (int i = 0; i < g.n; ++i)
    if (find(i) == i) ++count;
  return count;
}

// Builds a fully connected random instance (pairwise conflicting evidence,
// random supports), then checks everything that can be checked by brute
// enumeration: the spin marginal and per-edge conditional of the joint
// spin/bond measure, the bond-cluster count bound, and the closed-form bond
// state weight against the explicit sum over spins.
int run_graph_check(int n, int q, double beta, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<SimpleSupport> evidence;
  evidence.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    evidence.push_back(SimpleSupport{FocalSet::from_elements(n, {i + 1}),
                                     rng.next_open_double()});
  InteractionMatrix j = build_interactions(evidence);
  BondGraph g = bond_probabilities(j, beta);
  MarginalCheck mc = verify_marginals(j, g, beta, q);

  int edges = static_cast<int>(g.edges.size());
  if (edges > 24) throw TooLargeError("too many bond states to enumerate");
  bool cluster_bound_ok = true;
  long exact_states = 0, bounded_states = 0, skipped_states = 0;
  double max_abs_err = 0.0;   // exact closed-form domain
  double max_undercount = 0.0;  // closed form must never fall below the sum
  for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
    BondState b;
    b.occupied.resize(static_cast<std::size_t>(edges));
    for (int e = 0; e < edges; ++e) b.occupied[e] = (mask >> e) & 1u;
    double brute = 0.0;
    SpinConfiguration sigma(static_cast<std::size_t>(n), 1);
    while (true) {
      brute += joint_weight(g, sigma, b, q);
      int i = 0;
      while (i < n && ++sigma[i] > q) sigma[i++] = 1;
      if (i == n) break;
    }
    int c = occupied_component_count(g, b);
    if (brute > 0.0 && c > q) cluster_bound_ok = false;
    double closed = 0.0;
    bool evaluable = true;
    try {
      closed = graph_distribution_weight(g, b, q);
    } catch (const NotGroundStateFormError&) {
      evaluable = false;
      ++skipped_states;
    }
    if (!evaluable) continue;
    if (c == 1 || c >= q || q <= 2) {
      ++exact_states;
      max_abs_err = std::max(max_abs_err, std::abs(closed - brute));
    } else {
      // Composition sum counts some spin configurations more than once
      // here, so only the direction of the error is pinned down.
      ++bounded_states;
      max_undercount = std::max(max_undercount, brute - closed);
    }
  }

  bool marginals_ok = mc.tv_spin <= 1e-10 && mc.tv_cond <= 1e-10;
  bool weight_ok = max_abs_err <= 1e-10 && max_undercount <= 1e-9;
  bool ok = marginals_ok && cluster_bound_ok && weight_ok;
  std::cout << "{\"n\":" << n << ",\"q\":" << q
            << ",\"beta\":" << format_double(beta) << ",\"seed\":" << seed
            << ",\"edges\":" << edges
            << ",\"tv_spin\":" << format_double(mc.tv_spin)
            << ",\"tv_cond\":" << format_double(mc.tv_cond)
            << ",\"marginals_ok\":" << (marginals_ok ? "true" : "false")
            << ",\"cluster_bound_ok\":" << (cluster_bound_ok ? "true" : "false")
            << ",\"weight_exact_states\":" << exact_states
            << ",\"weight_max_abs_err\":" << format_double(max_abs_err)
            << ",\"weight_bounded_states\":" << bounded_states
            << ",\"weight_max_undercount\":" << format_double(max_undercount)
            << ",\"weight_skipped_states\":" << skipped_states
            << ",\"weight_ok\":" << (weight_ok ? "true" : "false")
            << ",\"ok\":" << (ok ? "true" : "false") << "}\n";
  return ok ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence clustering toolkit: generate instances, anneal, "
               "enumerate exact minima, benchmark, verify the bond graph"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand(
      "generate", "Write a random all-subsets evidence file");
  int gen_k = 3;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--k", gen_k, "Frame size")->required()->check(CLI::Range(2, 20));
  gen->add_option("--seed", gen_seed, "RNG seed (default 1)");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  auto* solve = app.add_subcommand(
      "solve", "Cluster an evidence file by mean-field annealing");
  std::string solve_in, solve_config;
  AnnealConfig cfg;
  solve->add_option("--in", solve_in, "Evidence file (default stdin)");
  solve->add_option("--config", solve_config,
                    "Flat JSON config file; explicit flags win");
  solve->add_option("--q", cfg.q, "Cluster count");
  solve->add_option("--seed", cfg.seed, "RNG seed (default 1)");
  solve->add_option("--tau", cfg.tau, "Cooling factor (default 0.9)");
  solve->add_option("--epsilon", cfg.epsilon,
                    "Init and per-sweep noise amplitude (default 0.001)");
  solve->add_option("--alpha", cfg.alpha, "Cluster size balancing weight (default 0)");
  solve->add_option("--gamma", cfg.gamma, "Self-coupling (default 0.5)");
  solve->add_option("--lambda", cfg.lambda, "Conflict scale (default 1)");
  solve->add_option("--sweep-tol", cfg.sweep_tol,
                    "Per-temperature convergence tolerance (default 0.01)");
  solve->add_option("--saturation-tol", cfg.saturation_tol,
                    "Freeze-out saturation (default 0.99)");
  solve->add_option("--max-sweeps", cfg.max_sweeps_per_temp,
                    "Sweep cap per temperature (default 1000)");
  solve->add_option("--max-temps", cfg.max_temps,
                    "Temperature step cap (default 500)");

  auto* bench = app.add_subcommand(
      "benchmark", "Run seeded solver suites over a range of frame sizes");
  int k_min = 3, k_max = 7, runs = 10, jobs = 1;
  std::uint64_t bench_seed = 1;
  std::string bench_out, bench_runs_out;
  bench->add_option("--k-min", k_min, "Smallest frame size (default 3)")
      ->check(CLI::Range(2, 20));
  bench->add_option("--k-max", k_max, "Largest frame size (default 7)")
      ->check(CLI::Range(2, 20));
  bench->add_option("--runs", runs, "Runs per frame size (default 10)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "Base RNG seed (default 1)");
  bench->add_option("--jobs", jobs, "Parallel runs (default 1, keeps timings honest)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Summary CSV path (default stdout)");
  bench->add_option("--runs-out", bench_runs_out, "Per-run JSON lines path");

  auto* orc = app.add_subcommand(
      "oracle", "Exhaustive minimum over all cluster assignments");
  std::string orc_in, orc_obj = "exact";
  int orc_q = 0;
  orc->add_option("--in", orc_in, "Evidence file (default stdin)");
  orc->add_option("--q", orc_q, "Cluster count")->required();
  orc->add_option("--objective", orc_obj, "exact | linearized (default exact)")
      ->check(CLI::IsMember({"exact", "linearized"}));

  auto* gc = app.add_subcommand(
      "graph-check", "Verify bond-graph identities on a random tiny instance");
  int gc_n = 4, gc_q = 3;
  double gc_beta = 1.0;
  std::uint64_t gc_seed = 1;
  gc->add_option("--n", gc_n, "Site count (default 4)")->check(CLI::Range(1, 6));
  gc->add_option("--q", gc_q, "Spin states (default 3)")->check(CLI::Range(2, 8));
  gc->add_option("--beta", gc_beta, "Inverse temperature (default 1)")
      ->check(CLI::PositiveNumber);
  gc->add_option("--seed", gc_seed, "RNG seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_generate(gen_k, gen_seed, gen_out);
    if (solve->parsed()) {
      if (!solve_config.empty()) merge_config_file(solve_config, *solve, cfg);
      return run_solve(solve_in, cfg);
    }
    if (orc->parsed()) return run_oracle(orc_in, orc_q, orc_obj);
    if (bench->parsed())
      return run_benchmark(k_min, k_max, runs, bench_seed, jobs, bench_out,
                           bench_runs_out);
    if (gc->parsed()) return run_graph_check(gc_n, gc_q, gc_beta, gc_seed);
  } catch (const TooLargeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
