#include "dsclust/evidence.hpp"

#include <cmath>
#include <limits>

namespace dsclust {

FocalSet FocalSet::from_elements(int frame_size, const std::vector<int>& elements) {
  if (frame_size < 1 || frame_size > 64)
    throw std::invalid_argument("frame size must be in 1..64");
  FocalSet f{frame_size, 0};
  for (int e : elements) {
    if (e < 1 || e > frame_size)
      throw std::invalid_argument("focal element outside the frame");
    f.bits |= 1ull << (e - 1);
  }
  if (f.bits == 0) throw std::invalid_argument("focal set must be nonempty");
  return f;
}

std::vector<int> FocalSet::elements() const {
  std::vector<int> out;
  for (int e = 1; e <= frame_size; ++e)
    if (bits & (1ull << (e - 1))) out.push_back(e);
  return out;
}

MassFunction MassFunction::from_simple(const SimpleSupport& s) {
  if (s.support < 0.0 || s.support > 1.0)
    throw std::invalid_argument("support must be in [0, 1]");
  MassFunction m{s.focal.frame_size, {}};
  if (s.support > 0.0) m.masses[s.focal.bits] = s.support;
  if (s.support < 1.0)
    m.masses[FocalSet::whole_frame(s.focal.frame_size).bits] += 1.0 - s.support;
  return m;
}

CombineResult combine(const MassFunction& m1, const MassFunction& m2) {
  if (m1.frame_size != m2.frame_size)
    throw FrameMismatchError("combine: operands on different frames");

  std::map<std::uint64_t, double> acc;
  double kappa = 0.0;
  for (const auto& [a, x] : m1.masses) {
    for (const auto& [b, y] : m2.masses) {
      std::uint64_t c = a & b;
      if (c)
        acc[c] += x * y;
      else
        kappa += x * y;
    }
  }
  if (acc.empty())
    throw TotalConflictError("combine: sources are in total conflict");

  double total = 0.0;
  for (const auto& [bits, v] : acc) total += v;
  // kappa reported from the empty-intersection accumulator; normalize by the
  // surviving mass, then drop dust and renormalize so the sum is exactly 1.
  MassFunction out{m1.frame_size, {}};
  double kept = 0.0;
  for (const auto& [bits, v] : acc) {
    double w = v / total;
    if (w >= 1e-15) {
      out.masses[bits] = w;
      kept += w;
    }
  }
  for (auto& [bits, v] : out.masses) v /= kept;
  return CombineResult{std::move(out), kappa};
}

double belief(const MassFunction& m, const FocalSet& a) {
  if (m.frame_size != a.frame_size)
    throw FrameMismatchError("belief: focal set on a different frame");
  double sum = 0.0;
  for (const auto& [b, v] : m.masses)
    if ((b & a.bits) == b) sum += v;
  return sum;
}

double plausibility(const MassFunction& m, const FocalSet& a) {
  if (m.frame_size != a.frame_size)
    throw FrameMismatchError("plausibility: focal set on a different frame");
  double sum = 0.0;
  for (const auto& [b, v] : m.masses)
    if (b & a.bits) sum += v;
  return sum;
}

double pairwise_conflict(const SimpleSupport& s1, const SimpleSupport& s2) {
  if (s1.focal.frame_size != s2.focal.frame_size)
    throw FrameMismatchError("pairwise_conflict: different frames");
  if (s1.focal.intersects(s2.focal)) return 0.0;
  double p = s1.support * s2.support;
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-p);
}

double cluster_conflict(const std::vector<SimpleSupport>& members) {
  if (members.size() < 2) return 0.0;
  // Fold with Dempster's rule; the total conflict of the chain is
  // 1 - prod(1 - kappa_step), which equals the conflict of the joint
  // (unnormalized) combination.
  MassFunction m = MassFunction::from_simple(members[0]);
  double one_minus = 1.0;
  for (std::size_t i = 1; i < members.size(); ++i) {
    try {
      CombineResult r = combine(m, MassFunction::from_simple(members[i]));
      one_minus *= 1.0 - r.kappa;
      m = std::move(r.mass);
    } catch (const TotalConflictError&) {
      return 1.0;
    }
  }
  return 1.0 - one_minus;
}

static void check_partition(std::size_t n, const Partition& p) {
  if (p.assignment.size() != n)
    throw std::invalid_argument("partition length does not match evidence count");
  for (int c : p.assignment)
    if (c < 1 || c > p.cluster_count)
      throw std::invalid_argument("cluster id outside 1..cluster_count");
}

double metaconflict(const std::vector<SimpleSupport>& evidence, const Partition& p) {
  check_partition(evidence.size(), p);
  std::vector<std::vector<SimpleSupport>> clusters(p.cluster_count);
  for (std::size_t i = 0; i < evidence.size(); ++i)
    clusters[p.assignment[i] - 1].push_back(evidence[i]);
  double one_minus = 1.0;
  for (const auto& members : clusters) one_minus *= 1.0 - cluster_conflict(members);
  return 1.0 - one_minus;
}

double linearized_conflict(const std::vector<SimpleSupport>& members, double lambda) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be positive");
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < members.size(); ++k)
    for (std::size_t l = k + 1; l < members.size(); ++l)
      sum += pairwise_conflict(members[k], members[l]);
  return sum / lambda;
}

double linearized_metaconflict(const std::vector<SimpleSupport>& evidence,
                               const Partition& p, double lambda) {
  check_partition(evidence.size(), p);
  std::vector<std::vector<SimpleSupport>> clusters(p.cluster_count);
  for (std::size_t i = 0; i < evidence.size(); ++i)
    clusters[p.assignment[i] - 1].push_back(evidence[i]);
  double sum = 0.0;
  for (const auto& members : clusters) sum += linearized_conflict(members, lambda);
  return sum;
}

}  // namespace dsclust
