#include "dsclust/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace dsclust {
namespace {

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  if (n == 0) return 0.0;
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / xs.size();
}

}  // namespace

BenchmarkInstance generate_instance(int k, std::uint64_t seed) {
  if (k < 2 || k > 20)
    throw std::invalid_argument("benchmark frame size must be in 2..20");
  BenchmarkInstance inst;
  inst.k = k;
  SplitMix64 rng(seed);
  std::uint64_t full = (1ull << k) - 1ull;
  inst.evidence.reserve(full);
  for (std::uint64_t bits = 1; bits <= full; ++bits)
    inst.evidence.push_back(SimpleSupport{FocalSet{k, bits}, rng.next_open_double()});
  return inst;
}

Partition lowest_element_partition(const BenchmarkInstance& inst) {
  Partition p;
  p.cluster_count = inst.k;
  p.assignment.reserve(inst.evidence.size());
  for (const auto& e : inst.evidence) {
    int lowest = 1;
    while (!(e.focal.bits & (1ull << (lowest - 1)))) ++lowest;
    p.assignment.push_back(lowest);
  }
  return p;
}

AnnealConfig benchmark_config(int k, std::uint64_t seed) {
  AnnealConfig cfg;
  cfg.q = k;
  cfg.alpha = default_alpha(k);
  cfg.seed = seed;
  return cfg;
}

double per_cluster_conflict(double metaconflict, int q) {
  // Inverse of mcf = 1 - (1 - c)^q for q equally conflicted clusters.
  return 1.0 - std::pow(1.0 - metaconflict, 1.0 / q);
}

SuiteSummary run_suite(int k, int runs, const AnnealConfig& cfg, int jobs) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.q != k)
    throw std::invalid_argument("run_suite expects cfg.q == k for the benchmark");

  SuiteSummary out;
  out.k = k;
  out.n = (1 << k) - 1;
  out.runs = runs;
  out.per_run.resize(runs);

  auto one_run = [&](int r) {
    BenchmarkInstance inst = generate_instance(k, derive_seed(cfg.seed, 2ull * r));
    AnnealConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(cfg.seed, 2ull * r + 1ull);

    auto t0 = std::chrono::steady_clock::now();
    ClusterAssignment res = anneal(inst.evidence, run_cfg);
    auto t1 = std::chrono::steady_clock::now();

    RunMetrics m;
    m.metaconflict = metaconflict(inst.evidence, res.partition);
    m.per_cluster = per_cluster_conflict(m.metaconflict, k);
    m.per_evidence = m.per_cluster / (static_cast<double>(out.n) / k);
    m.time_s = std::chrono::duration<double>(t1 - t0).count();
    m.sweeps = res.sweeps_total;
    m.hit_global = m.metaconflict <= 1e-9;
    m.frozen = res.frozen;
    out.per_run[r] = m;
  };

  if (jobs <= 1) {
    for (int r = 0; r < runs; ++r) one_run(r);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int workers = std::min(jobs, runs);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1)) one_run(r);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<double> mcf, pc, pe, ts;
  int hits = 0;
  for (const auto& m : out.per_run) {
    mcf.push_back(m.metaconflict);
    pc.push_back(m.per_cluster);
    pe.push_back(m.per_evidence);
    ts.push_back(m.time_s);
    if (m.hit_global) ++hits;
  }
  out.median_mcf = median_of(mcf);
  out.mean_mcf = mean_of(mcf);
  out.median_per_cluster = median_of(pc);
  out.mean_per_cluster = mean_of(pc);
  out.median_per_evidence = median_of(pe);
  out.mean_per_evidence = mean_of(pe);
  out.global_opt_pct = 100.0 * hits / runs;
  out.mean_time_s = mean_of(ts);
  double n2 = static_cast<double>(out.n) * out.n;
  double lg = std::log(static_cast<double>(out.n));
  out.time_per_n2k2 = out.mean_time_s / (n2 * k * k);
  out.time_per_n2log2n = out.mean_time_s / (n2 * lg * lg);
  return out;
}

RandomConflictExpectation expected_random_conflict(int q) {
  if (q < 2 || q > 30) throw std::invalid_argument("q must be in 2..30");
  double num = std::pow(3.0, q) - 2.0 * std::pow(2.0, q) + 1.0;
  double den = (std::pow(2.0, q) - 1.0) * (std::pow(2.0, q) - 2.0);
  RandomConflictExpectation e;
  e.p_disjoint = num / den;
  // supports are independent U(0,1), so a conflicting pair contributes
  // E[s_i s_k] = 1/4 on average
  e.expected_conflict = e.p_disjoint / 4.0;
  return e;
}

std::uint64_t distinct_subset_pairs(int q) {
  std::uint64_t subsets = (1ull << q) - 1ull;
  return subsets * (subsets - 1) / 2;
}

std::uint64_t conflicting_subset_pairs(int q) {
  std::uint64_t three_q = 1;
  for (int i = 0; i < q; ++i) three_q *= 3;
  return (three_q - (1ull << (q + 1)) + 1) / 2;
}

std::vector<TimingRow> timing_profile(const std::vector<int>& ks, int runs,
                                      std::uint64_t seed, int jobs) {
  std::vector<TimingRow> rows;
  for (int k : ks) {
    SuiteSummary s = run_suite(k, runs, benchmark_config(k, seed), jobs);
    rows.push_back(TimingRow{k, s.n, s.mean_time_s, s.time_per_n2k2,
                             s.time_per_n2log2n});
  }
  return rows;
}

}  // namespace dsclust
