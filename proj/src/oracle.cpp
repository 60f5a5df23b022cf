#include "dsclust/oracle.hpp"

#include <cmath>

namespace dsclust {
namespace {

constexpr std::uint64_t kScanBudget = 10'000'000;

// q^n with saturation so the budget check cannot overflow.
std::uint64_t checked_pow(std::uint64_t q, std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (r > kScanBudget) return kScanBudget + 1;
    r *= q;
  }
  return r;
}

// Lexicographic successor of the tail assignment[1..n-1]; entry 0 stays
// pinned. Returns false once the scan wrapped around.
bool advance(std::vector<int>& assignment, int q) {
  for (int i = static_cast<int>(assignment.size()) - 1; i >= 1; --i) {
    if (assignment[i] < q) {
      assignment[i] += 1;
      for (std::size_t j = i + 1; j < assignment.size(); ++j) assignment[j] = 1;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult enumerate_min(const std::vector<SimpleSupport>& evidence, int q,
                           Objective objective, double lambda) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  const std::size_t n = evidence.size();
  if (n == 0) throw std::invalid_argument("no evidence");
  if (checked_pow(q, n) > kScanBudget)
    throw TooLargeError("enumeration budget q^N <= 10^7 exceeded");

  // Pairwise conflict weights once; the linearized objective is then O(N^2)
  // per assignment instead of re-deriving logs.
  std::vector<double> w(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      w[a * n + b] = pairwise_conflict(evidence[a], evidence[b]);

  Partition p{std::vector<int>(n, 1), q};
  OracleResult out;
  double best_exact = -1.0, best_lin = -1.0;

  do {
    out.partitions_scanned += 1;

    double lin = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (p.assignment[a] == p.assignment[b]) lin += w[a * n + b];
    lin /= lambda;

    double exact = metaconflict(evidence, p);

    if (best_exact < 0.0 || exact < best_exact) {
      best_exact = exact;
      if (objective == Objective::kExact) out.best_partition = p;
    }
    if (best_lin < 0.0 || lin < best_lin) {
      best_lin = lin;
      out.linearized_argmin = p;
    }
  } while (advance(p.assignment, q));

  if (objective == Objective::kLinearized) out.best_partition = out.linearized_argmin;
  out.min_metaconflict = best_exact;
  out.min_linearized = best_lin;
  return out;
}

LinearizationGap linearization_gap(const std::vector<SimpleSupport>& evidence, int q,
                                   double lambda) {
  OracleResult lin = enumerate_min(evidence, q, Objective::kLinearized, lambda);
  double at_lin_argmin = metaconflict(evidence, lin.best_partition);
  LinearizationGap g;
  g.gap = at_lin_argmin - lin.min_metaconflict;
  g.argmin_agree = std::abs(at_lin_argmin - lin.min_metaconflict) <= 1e-9;
  return g;
}

}  // namespace dsclust
