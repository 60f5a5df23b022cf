#pragma once

#include <cstdint>
#include <vector>

#include "dsclust/evidence.hpp"

namespace dsclust {

enum class Objective { kExact, kLinearized };

struct OracleResult {
  Partition best_partition;         // first minimizer of the chosen objective
  Partition linearized_argmin;      // first minimizer of the linearized objective
  double min_metaconflict = 0.0;    // exact objective at the exact argmin
  double min_linearized = 0.0;      // linearized objective at its argmin
  std::uint64_t partitions_scanned = 0;
};

// Exhaustive scan over all assignments of N pieces to q clusters, with piece
// 1 pinned to cluster 1 (label symmetry makes that lossless). Assignments
// are visited in lexicographic order and the first minimum wins, so results
// are reproducible. Throws TooLargeError when q^N exceeds 10^7.
//
// `objective` selects what best_partition minimizes; both objective values
// are always reported (each at its own argmin).
OracleResult enumerate_min(const std::vector<SimpleSupport>& evidence, int q,
                           Objective objective = Objective::kExact,
                           double lambda = 1.0);

struct LinearizationGap {
  double gap = 0.0;          // exact metaconflict at linearized argmin, minus true min
  bool argmin_agree = false; // both argmins reach the same exact metaconflict
};

// How much the pairwise surrogate objective gives away on this instance.
LinearizationGap linearization_gap(const std::vector<SimpleSupport>& evidence, int q,
                                   double lambda = 1.0);

}  // namespace dsclust
