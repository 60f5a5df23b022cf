#include "dsclust/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dsclust/rng.hpp"

namespace dsclust {
namespace {

EigenExtremes jacobi_extremes(std::vector<double> a, int n) {
  // Cyclic Jacobi with the classic threshold schedule; eigenvalues end up on
  // the diagonal. O(n^3) per sweep, fine for the n <= 256 regime.
  auto at = [&](int i, int j) -> double& { return a[i * n + j]; };
  double fro = 0.0;
  for (double x : a) fro += x * x;
  const double off_tol = std::max(fro * 1e-28, 1e-300);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off <= off_tol) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  EigenExtremes e{a[0], a[0]};
  for (int i = 1; i < n; ++i) {
    e.min = std::min(e.min, at(i, i));
    e.max = std::max(e.max, at(i, i));
  }
  return e;
}

// Dominant eigenvalue of the PSD matrix (shift*I + sign*M) by power
// iteration; returns the corresponding eigenvalue of M itself.
double powered_extreme(const std::vector<double>& m, int n, double shift, double sign) {
  SplitMix64 rng(0x5DEECE66Dull);
  std::vector<double> v(n), w(n);
  for (double& x : v) x = rng.next_double() + 0.5;

  double eig = 0.0, prev = 0.0;
  int cap = 10 * n;
  for (int it = 0; it < cap; ++it) {
    for (int i = 0; i < n; ++i) {
      double acc = shift * v[i];
      const double* row = m.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) acc += sign * row[j] * v[j];
      w[i] = acc;
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return sign > 0 ? -shift : shift;  // M v = -shift*sign*v direction
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
    eig = norm;  // Rayleigh estimate for the shifted PSD operator
    if (it > 2 && std::abs(eig - prev) <= 1e-8 * std::max(1.0, std::abs(eig))) break;
    prev = eig;
  }
  return sign > 0 ? eig - shift : shift - eig;
}

}  // namespace

EigenExtremes symmetric_extreme_eigenvalues(const std::vector<double>& m, int n) {
  if (n <= 0 || m.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("symmetric_extreme_eigenvalues: bad dimensions");
  if (n == 1) return EigenExtremes{m[0], m[0]};
  if (n <= 256) return jacobi_extremes(m, n);

  double bound = 0.0;  // Gershgorin: all eigenvalues within [-bound, bound]
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(m[static_cast<std::size_t>(i) * n + j]);
    bound = std::max(bound, row);
  }
  if (bound == 0.0) return EigenExtremes{0.0, 0.0};
  double shift = bound * 1.01;
  return EigenExtremes{powered_extreme(m, n, shift, -1.0),
                       powered_extreme(m, n, shift, +1.0)};
}

}  // namespace dsclust
