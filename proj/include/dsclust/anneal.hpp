#pragma once

#include <cstdint>
#include <vector>

#include "dsclust/evidence.hpp"
#include "dsclust/rng.hpp"

namespace dsclust {

// Symmetric pair interactions derived from evidence conflicts: entry (i,k) is
// the scaled conflict weight -log(1 - s_i*s_k)/lambda when focal sets are
// disjoint, 0 otherwise. Certain contradictions (s_i = s_k = 1) saturate at
// 1e12 and set `capped`.
struct InteractionMatrix {
  int n = 0;
  std::vector<double> j;  // row-major n*n, zero diagonal, nonnegative
  bool capped = false;

  double at(int a, int b) const { return j[static_cast<std::size_t>(a) * n + b]; }
};

constexpr double kInteractionCap = 1e12;

InteractionMatrix build_interactions(const std::vector<SimpleSupport>& evidence,
                                     double lambda = 1.0);

// Count-dependent equipartition pressure used for the larger benchmark sizes.
double default_alpha(int cluster_count);

struct AnnealConfig {
  int q = 0;                      // number of clusters (required, >= 1)
  double tau = 0.9;               // geometric cooling factor in (0, 1)
  double epsilon = 0.001;         // init + per-sweep noise amplitude
  double alpha = 0.0;             // cluster-size balancing term
  double gamma = 0.5;             // self-coupling that forces crispness
  double lambda = 1.0;            // conflict scale used for the interactions
  double sweep_tol = 0.01;        // inner-loop convergence on (1/N) sum |dV|
  double saturation_tol = 0.99;   // stop once (1/N) sum V^2 reaches this
  int max_sweeps_per_temp = 1000;
  int max_temps = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

// Row-stochastic cluster memberships V (n rows, k columns) plus progress
// counters; the state a sweep or a full anneal advances.
struct MeanFieldState {
  int n = 0;
  int k = 0;
  std::vector<double> v;  // row-major n*k, rows on the simplex
  double temperature = 0.0;
  int sweeps_done = 0;
  int temps_done = 0;

  double at(int i, int a) const { return v[static_cast<std::size_t>(i) * k + a]; }
  double saturation() const;
};

struct ClusterAssignment {
  Partition partition;            // argmax memberships, ties to lowest index
  double saturation = 0.0;        // in [1/q, 1]
  double final_temperature = 0.0;
  double energy = 0.0;            // of the hardened partition
  bool frozen = false;            // false when max_temps ran out first
  int sweeps_total = 0;
  int temps_total = 0;
};

// Mean-field starting temperature: (1/q) * max(-eig_min, eig_max) of the
// effective coupling matrix j + alpha - gamma*I. Throws
// DegenerateSpectrumError when the result is not positive.
double critical_temperature(const InteractionMatrix& j, double alpha, double gamma,
                            int q);

// One serial sweep of the mean-field update at state.temperature: rows are
// visited in ascending order, each row sees the freshest values of every
// other row, the softmax is stabilized by subtracting the row minimum of H,
// and epsilon*U[0,1) noise is added before the row is renormalized. Returns
// (1/N) sum |dV| over all entries.
double mean_field_sweep(MeanFieldState& state, const InteractionMatrix& j,
                        const AnnealConfig& cfg, SplitMix64& rng);

// Full annealing loop: start at the critical temperature, iterate sweeps to
// convergence, cool by tau, stop at saturation (or give up after max_temps
// and report frozen = false). Deterministic for a fixed config and seed.
ClusterAssignment anneal(const std::vector<SimpleSupport>& evidence,
                         const AnnealConfig& cfg);

// Potts energy of a membership matrix (row-major n*k):
//   1/2 sum_ij J_ij V_ia V_ja - gamma/2 sum |V|^2 + alpha/2 sum_a (col_a)^2.
double energy(const std::vector<double>& v, int n, int k, const InteractionMatrix& j,
              double alpha, double gamma);

// Same energy evaluated on the one-hot encoding of a partition.
double energy(const Partition& p, const InteractionMatrix& j, double alpha,
              double gamma);

}  // namespace dsclust
