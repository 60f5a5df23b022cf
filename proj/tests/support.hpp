#pragma once

// Shared test-side oracles and generators. The oracles here deliberately
// avoid the library's code paths: conflicts are computed by enumerating all
// focal selections of the joint product, and belief/plausibility by summing
// over every subset of the frame. Tests freeze values produced by these.

#include <cstdint>
#include <vector>

#include "dsclust/evidence.hpp"
#include "dsclust/rng.hpp"

namespace testsupport {

using dsclust::FocalSet;
using dsclust::MassFunction;
using dsclust::SimpleSupport;

// Exact conflict of combining all members, via the 2^n joint product: each
// piece contributes its focal set (weight s) or the whole frame (weight
// 1 - s); the conflict is the total weight of selections whose intersection
// is empty.
inline double joint_conflict_oracle(const std::vector<SimpleSupport>& members) {
  if (members.size() < 2) return 0.0;
  const std::size_t n = members.size();
  double empty_mass = 0.0;
  for (std::uint64_t pick = 0; pick < (1ull << n); ++pick) {
    double w = 1.0;
    std::uint64_t inter = ~0ull;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick & (1ull << i)) {
        w *= members[i].support;
        inter &= members[i].focal.bits;
      } else {
        w *= 1.0 - members[i].support;
        inter &= FocalSet::whole_frame(members[i].focal.frame_size).bits;
      }
    }
    if (inter == 0) empty_mass += w;
  }
  return empty_mass;
}

// Bel(A) by scanning every subset of the frame (frame sizes <= ~16 only).
inline double belief_oracle(const MassFunction& m, const FocalSet& a) {
  double sum = 0.0;
  std::uint64_t full = FocalSet::whole_frame(m.frame_size).bits;
  for (std::uint64_t b = 1; b <= full; ++b)
    if ((b | a.bits) == a.bits) sum += m.mass_of(b);
  return sum;
}

inline double plausibility_oracle(const MassFunction& m, const FocalSet& a) {
  double sum = 0.0;
  std::uint64_t full = FocalSet::whole_frame(m.frame_size).bits;
  for (std::uint64_t b = 1; b <= full; ++b)
    if ((b & a.bits) != 0) sum += m.mass_of(b);
  return sum;
}

// Random focal set: arbitrary nonempty subset of the frame. Fine for tests
// of combination algebra, belief, and the conflict oracle.
inline FocalSet random_subset(int frame_size, dsclust::SplitMix64& rng) {
  std::uint64_t full = FocalSet::whole_frame(frame_size).bits;
  std::uint64_t bits = 0;
  while (bits == 0) bits = rng.next_u64() & full;
  return FocalSet{frame_size, bits};
}

// Random contiguous interval [lo, hi] within the frame. Intervals have the
// 1-D Helly property (pairwise intersecting implies a common element), which
// is exactly the regime where the pairwise linearization provably bounds the
// exact conflict from above; instance generators for those checks use this.
inline FocalSet random_interval(int frame_size, dsclust::SplitMix64& rng) {
  int lo = 1 + static_cast<int>(rng.next_below(frame_size));
  int hi = lo + static_cast<int>(rng.next_below(frame_size - lo + 1));
  std::uint64_t bits = 0;
  for (int e = lo; e <= hi; ++e) bits |= 1ull << (e - 1);
  return FocalSet{frame_size, bits};
}

inline std::vector<SimpleSupport> random_interval_cluster(int frame_size, int count,
                                                          double max_support,
                                                          dsclust::SplitMix64& rng) {
  std::vector<SimpleSupport> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(SimpleSupport{random_interval(frame_size, rng),
                                max_support * rng.next_open_double()});
  return out;
}

}  // namespace testsupport
