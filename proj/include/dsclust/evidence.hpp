#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dsclust/errors.hpp"

namespace dsclust {

// Frame of discernment: the set of mutually exclusive answers {1, ..., size}.
// Frames up to 64 elements are supported so subsets fit in one machine word.
struct FrameOfDiscernment {
  int size = 0;

  std::uint64_t full_mask() const {
    return size == 64 ? ~0ull : ((1ull << size) - 1ull);
  }
};

// Nonempty subset of a frame, element k stored as bit k-1.
struct FocalSet {
  int frame_size = 0;
  std::uint64_t bits = 0;

  static FocalSet from_elements(int frame_size, const std::vector<int>& elements);
  static FocalSet whole_frame(int frame_size) {
    return FocalSet{frame_size, FrameOfDiscernment{frame_size}.full_mask()};
  }

  std::vector<int> elements() const;
  bool is_whole_frame() const {
    return bits == FrameOfDiscernment{frame_size}.full_mask();
  }
  bool intersects(const FocalSet& other) const { return (bits & other.bits) != 0; }

  friend bool operator==(const FocalSet&, const FocalSet&) = default;
};

// Simple support function: mass s on one focal set, 1-s on the whole frame.
struct SimpleSupport {
  FocalSet focal;
  double support = 0.0;  // in [0, 1]
};

// General mass function over a frame. Keys are focal-set bit masks; the empty
// set never appears, recorded masses are positive, and they sum to 1 within
// 1e-9 (combine() renormalizes and drops dust below 1e-15).
struct MassFunction {
  int frame_size = 0;
  std::map<std::uint64_t, double> masses;

  static MassFunction from_simple(const SimpleSupport& s);

  double mass_of(std::uint64_t bits) const {
    auto it = masses.find(bits);
    return it == masses.end() ? 0.0 : it->second;
  }
};

// Assignment of N evidence indices to clusters 1..cluster_count. Cluster ids
// are 1-based to match the file formats; empty clusters are allowed.
struct Partition {
  std::vector<int> assignment;
  int cluster_count = 0;
};

struct CombineResult {
  MassFunction mass;
  double kappa = 0.0;  // conflict absorbed by the normalization
};

// Dempster's rule of combination. Throws TotalConflictError when every focal
// intersection is empty and FrameMismatchError on differing frames.
CombineResult combine(const MassFunction& m1, const MassFunction& m2);

// Bel(A): total mass committed to subsets of A.
double belief(const MassFunction& m, const FocalSet& a);

// Pls(A): total mass not committed against A.
double plausibility(const MassFunction& m, const FocalSet& a);

// Weight of conflict between two simple supports: -log(1 - s1*s2) when the
// focal sets are disjoint, 0 otherwise. Two certain (s = 1) contradicting
// pieces give +infinity, which callers treat as a saturating value.
double pairwise_conflict(const SimpleSupport& s1, const SimpleSupport& s2);

// Conflict of combining all members by Dempster's rule, folded in input
// order: 1 - prod_steps(1 - kappa_step). Empty or singleton input gives 0;
// a totally conflicting cluster gives 1.
double cluster_conflict(const std::vector<SimpleSupport>& members);

// Conflict against the hypothesis that the clustering is adequate:
// 1 - prod_i (1 - c_i) over per-cluster conflicts (no domain-level term).
double metaconflict(const std::vector<SimpleSupport>& evidence, const Partition& p);

// Sum of pairwise conflict weights inside one cluster, scaled by 1/lambda.
// Upper bounds the exact cluster conflict weight when focal sets conflict
// pairwise, which is what makes it usable as a spin-model energy.
double linearized_conflict(const std::vector<SimpleSupport>& members, double lambda = 1.0);

// Same sum accumulated over every cluster of a partition.
double linearized_metaconflict(const std::vector<SimpleSupport>& evidence,
                               const Partition& p, double lambda = 1.0);

}  // namespace dsclust
