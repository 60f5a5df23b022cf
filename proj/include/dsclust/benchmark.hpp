#pragma once

#include <cstdint>
#include <vector>

#include "dsclust/anneal.hpp"
#include "dsclust/evidence.hpp"

namespace dsclust {

// Stress instance over a k-element frame: one simple support per nonempty
// subset (2^k - 1 pieces, subsets in ascending bit-mask order) with supports
// uniform on the open interval (0, 1). Assigning every subset to the cluster
// of its lowest element is conflict-free, so the global minimum is always 0.
struct BenchmarkInstance {
  int k = 0;
  std::vector<SimpleSupport> evidence;
};

BenchmarkInstance generate_instance(int k, std::uint64_t seed);

// The conflict-free witness described above; handy for tests.
Partition lowest_element_partition(const BenchmarkInstance& inst);

struct RunMetrics {
  double metaconflict = 0.0;
  double per_cluster = 0.0;    // 1 - (1 - mcf)^(1/q)
  double per_evidence = 0.0;   // per_cluster / (N/q)
  double time_s = 0.0;         // anneal call only
  int sweeps = 0;
  bool hit_global = false;     // metaconflict <= 1e-9
  bool frozen = true;
};

struct SuiteSummary {
  int k = 0;
  int n = 0;
  int runs = 0;
  double median_mcf = 0.0, mean_mcf = 0.0;
  double median_per_cluster = 0.0, mean_per_cluster = 0.0;
  double median_per_evidence = 0.0, mean_per_evidence = 0.0;
  double global_opt_pct = 0.0;
  double mean_time_s = 0.0;
  double time_per_n2k2 = 0.0;    // mean_time / (N^2 K^2)
  double time_per_n2log2n = 0.0; // mean_time / (N^2 ln^2 N)
  std::vector<RunMetrics> per_run;
};

// Suite defaults for frame size k: q = k, alpha from default_alpha,
// everything else the stock AnnealConfig.
AnnealConfig benchmark_config(int k, std::uint64_t seed);

// `runs` anneals at frame size k. Run r draws a fresh instance from
// derive_seed(cfg.seed, 2r) and anneals with derive_seed(cfg.seed, 2r+1),
// so the whole suite is reproducible from cfg.seed alone and the result is
// independent of `jobs`. Reported metaconflicts are the exact recursive
// ones, not the linearized objective the annealer minimizes.
SuiteSummary run_suite(int k, int runs, const AnnealConfig& cfg, int jobs = 1);

double per_cluster_conflict(double metaconflict, int q);

struct RandomConflictExpectation {
  double p_disjoint = 0.0;         // chance a random pair of distinct subsets conflicts
  double expected_conflict = 0.0;  // p_disjoint * E[s_i s_k] = p_disjoint / 4
};

// Closed-form conflict frequency among the (2^q - 1) subsets of a q-element
// frame: p = (3^q - 2^(q+1) + 1) / ((2^q - 1)(2^q - 2)).
RandomConflictExpectation expected_random_conflict(int q);

// Unordered pair counts behind the closed form, for exhaustive cross-checks.
std::uint64_t distinct_subset_pairs(int q);
std::uint64_t conflicting_subset_pairs(int q);

struct TimingRow {
  int k = 0;
  int n = 0;
  double mean_time_s = 0.0;
  double per_n2k2 = 0.0;
  double per_n2log2n = 0.0;
};

// Mean anneal wall time per frame size (instance generation and interaction
// building excluded), with the two normalizations used to judge scaling.
std::vector<TimingRow> timing_profile(const std::vector<int>& ks, int runs,
                                      std::uint64_t seed, int jobs = 1);

}  // namespace dsclust
