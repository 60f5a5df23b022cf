#include "dsclust/anneal.hpp"

#include <cmath>
#include <stdexcept>

#include "dsclust/spectrum.hpp"

namespace dsclust {

InteractionMatrix build_interactions(const std::vector<SimpleSupport>& evidence,
                                     double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  int n = static_cast<int>(evidence.size());
  InteractionMatrix m;
  m.n = n;
  m.j.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (evidence[a].focal.intersects(evidence[b].focal)) continue;
      double p = evidence[a].support * evidence[b].support;
      double w;
      if (p >= 1.0) {
        w = kInteractionCap;
        m.capped = true;
      } else {
        w = -std::log1p(-p) / lambda;
      }
      m.j[static_cast<std::size_t>(a) * n + b] = w;
      m.j[static_cast<std::size_t>(b) * n + a] = w;
    }
  }
  return m;
}

double default_alpha(int cluster_count) {
  switch (cluster_count) {
    case 8: return 1e-6;
    case 10: return 3e-7;
    case 11: return 3e-8;
    default: return 0.0;  // includes 9, where zero worked best
  }
}

void AnnealConfig::validate() const {
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau must be in (0,1)");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be > 0");
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be > 0");
  if (sweep_tol <= 0.0) throw std::invalid_argument("sweep_tol must be > 0");
  if (!(saturation_tol > 0.0 && saturation_tol <= 1.0))
    throw std::invalid_argument("saturation_tol must be in (0,1]");
  if (max_sweeps_per_temp < 1 || max_temps < 1)
    throw std::invalid_argument("iteration caps must be >= 1");
}

double MeanFieldState::saturation() const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s / n;
}

double critical_temperature(const InteractionMatrix& j, double alpha, double gamma,
                            int q) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  int n = j.n;
  std::vector<double> m(j.j);
  for (std::size_t idx = 0; idx < m.size(); ++idx) m[idx] += alpha;
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] -= gamma;
  EigenExtremes e = symmetric_extreme_eigenvalues(m, n);
  double tc = std::max(-e.min, e.max) / q;
  if (!(tc > 0.0))
    throw DegenerateSpectrumError("critical temperature is not positive");
  return tc;
}

double mean_field_sweep(MeanFieldState& state, const InteractionMatrix& j,
                        const AnnealConfig& cfg, SplitMix64& rng) {
  const int n = state.n, k = state.k;
  const double t = state.temperature;
  std::vector<double> h(k), row(k);

  // Column sums track sum_j V_ja including row i itself; the alpha term in
  // the local field wants exactly that, and keeping them incremental makes
  // the sweep O(N^2 K) instead of O(N^2 K + N^2).
  std::vector<double> colsum(k, 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < k; ++a) colsum[a] += state.at(i, a);

  double delta = 0.0;
  for (int i = 0; i < n; ++i) {
    double* vi = state.v.data() + static_cast<std::size_t>(i) * k;
    for (int a = 0; a < k; ++a) h[a] = cfg.alpha * colsum[a] - cfg.gamma * vi[a];
    const double* jrow = j.j.data() + static_cast<std::size_t>(i) * j.n;
    for (int jj = 0; jj < n; ++jj) {
      double w = jrow[jj];
      if (w == 0.0) continue;
      const double* vj = state.v.data() + static_cast<std::size_t>(jj) * k;
      for (int a = 0; a < k; ++a) h[a] += w * vj[a];
    }

    // Softmax of -H/T, shifted by the row minimum of H so the largest
    // exponent is zero and nothing overflows even for capped interactions.
    double hmin = h[0];
    for (int a = 1; a < k; ++a) hmin = std::min(hmin, h[a]);
    double z = 0.0;
    for (int a = 0; a < k; ++a) {
      row[a] = std::exp(-(h[a] - hmin) / t);
      z += row[a];
    }
    double total = 0.0;
    for (int a = 0; a < k; ++a) {
      row[a] = row[a] / z + cfg.epsilon * rng.next_double();
      total += row[a];
    }
    for (int a = 0; a < k; ++a) {
      double nv = row[a] / total;
      delta += std::abs(nv - vi[a]);
      colsum[a] += nv - vi[a];
      vi[a] = nv;
    }
  }
  state.sweeps_done += 1;
  return delta / n;
}

static Partition argmax_partition(const MeanFieldState& state) {
  Partition p;
  p.cluster_count = state.k;
  p.assignment.resize(state.n);
  for (int i = 0; i < state.n; ++i) {
    int best = 0;
    for (int a = 1; a < state.k; ++a)
      if (state.at(i, a) > state.at(i, best)) best = a;
    p.assignment[i] = best + 1;
  }
  return p;
}

ClusterAssignment anneal(const std::vector<SimpleSupport>& evidence,
                         const AnnealConfig& cfg) {
  cfg.validate();
  if (evidence.size() < 2)
    throw std::invalid_argument("anneal needs at least two pieces of evidence");

  InteractionMatrix j = build_interactions(evidence, cfg.lambda);
  const int n = j.n, k = cfg.q;

  MeanFieldState state;
  state.n = n;
  state.k = k;
  state.v.resize(static_cast<std::size_t>(n) * k);
  state.temperature = critical_temperature(j, cfg.alpha, cfg.gamma, cfg.q);

  SplitMix64 rng(cfg.seed);
  for (int i = 0; i < n; ++i) {
    double* vi = state.v.data() + static_cast<std::size_t>(i) * k;
    double total = 0.0;
    for (int a = 0; a < k; ++a) {
      vi[a] = 1.0 / k + cfg.epsilon * rng.next_double();
      total += vi[a];
    }
    for (int a = 0; a < k; ++a) vi[a] /= total;
  }

  ClusterAssignment out;
  for (int temp_iter = 0; temp_iter < cfg.max_temps; ++temp_iter) {
    for (int s = 0; s < cfg.max_sweeps_per_temp; ++s) {
      double delta = mean_field_sweep(state, j, cfg, rng);
      if (delta <= cfg.sweep_tol) break;
    }
    state.temps_done += 1;
    double sat = state.saturation();
    if (sat >= cfg.saturation_tol) {
      out.frozen = true;
      break;
    }
    state.temperature *= cfg.tau;
  }

  out.partition = argmax_partition(state);
  out.saturation = state.saturation();
  out.final_temperature = state.temperature;
  out.energy = energy(out.partition, j, cfg.alpha, cfg.gamma);
  out.sweeps_total = state.sweeps_done;
  out.temps_total = state.temps_done;
  return out;
}

double energy(const std::vector<double>& v, int n, int k, const InteractionMatrix& j,
              double alpha, double gamma) {
  if (v.size() != static_cast<std::size_t>(n) * k || j.n != n)
    throw std::invalid_argument("energy: dimension mismatch");
  double pair = 0.0;
  for (int a = 0; a < n; ++a) {
    const double* jrow = j.j.data() + static_cast<std::size_t>(a) * n;
    const double* va = v.data() + static_cast<std::size_t>(a) * k;
    for (int b = 0; b < n; ++b) {
      double w = jrow[b];
      if (w == 0.0) continue;
      const double* vb = v.data() + static_cast<std::size_t>(b) * k;
      double dot = 0.0;
      for (int c = 0; c < k; ++c) dot += va[c] * vb[c];
      pair += w * dot;
    }
  }
  double sq = 0.0;
  for (double x : v) sq += x * x;
  double col = 0.0;
  for (int c = 0; c < k; ++c) {
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += v[static_cast<std::size_t>(a) * k + c];
    col += s * s;
  }
  return 0.5 * pair - 0.5 * gamma * sq + 0.5 * alpha * col;
}

double energy(const Partition& p, const InteractionMatrix& j, double alpha,
              double gamma) {
  int n = static_cast<int>(p.assignment.size());
  int k = p.cluster_count;
  std::vector<double> v(static_cast<std::size_t>(n) * k, 0.0);
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i) * k + (p.assignment[i] - 1)] = 1.0;
  return energy(v, n, k, j, alpha, gamma);
}

}  // namespace dsclust
