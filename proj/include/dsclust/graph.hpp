#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dsclust/anneal.hpp"

namespace dsclust {

// Random-cluster companion of the spin model. A present edge (J_ik > 0)
// carries a bond with vacancy probability p_ik = 1 - exp(-beta*J_ik); pairs
// with J_ik = 0 have no bond variable at all (marked absent), which is not
// the same thing as a present edge with p = 0.
struct BondGraph {
  int n = 0;
  std::vector<double> p;        // row-major n*n, in [0, 1); 0 where absent
  std::vector<std::uint8_t> present;
  std::vector<std::pair<int, int>> edges;  // present (i, k), i < k, row order

  double p_at(int i, int k) const { return p[static_cast<std::size_t>(i) * n + k]; }
  bool edge_present(int i, int k) const {
    return present[static_cast<std::size_t>(i) * n + k] != 0;
  }
};

// One occupation value per present edge, aligned with BondGraph::edges
// (1 = occupied, 0 = vacant).
struct BondState {
  std::vector<std::uint8_t> occupied;
};

// Spin values 1..q per site.
using SpinConfiguration = std::vector<int>;

BondGraph bond_probabilities(const InteractionMatrix& j, double beta);

// Deterministic bond-cluster extraction: a present edge is vacant when its
// p exceeds the threshold and occupied otherwise; components of the occupied
// edges are returned (singletons included, sites ascending within and across
// components). Absent pairs never connect.
std::vector<std::vector<int>> extract_bond_clusters(const BondGraph& g,
                                                    double threshold);

// Unnormalized joint weight of (spins, bonds):
//   prod over present edges of (1-p)*[n=1] + p*[n=0]*[sigma_i != sigma_k].
double joint_weight(const BondGraph& g, const SpinConfiguration& sigma,
                    const BondState& bonds, int q);

struct MarginalCheck {
  double tv_spin = 0.0;  // TV(joint marginalized over bonds, Potts Boltzmann)
  double tv_cond = 0.0;  // worst spin config's TV of P(bonds | spins)
};

// Exhaustive check that the joint reproduces the Potts measure and the
// per-edge conditional law (same spins -> occupied; differing spins ->
// vacant with probability p). Guarded by q^N * 2^edges <= 10^7.
MarginalCheck verify_marginals(const InteractionMatrix& j, const BondGraph& g,
                               double beta, int q);

// Closed-form weight of a bond state after summing out the spins, for
// ground-state-shaped states under full connectivity: the composition sum
//   sum_{q_1+...+q_C = q} q!/(q_1!..q_C!) q_1^{N_1} .. q_C^{N_C}
// times prod p over vacant and prod (1-p) over occupied edges. Returns 0
// when there are more bond-clusters than q; throws NotGroundStateFormError
// when a vacant bond sits inside an occupied bond-cluster. Exact for C = 1,
// C = q, or q <= 2; an overcount (>= the true spin sum) in between.
double graph_distribution_weight(const BondGraph& g, const BondState& bonds, int q);

}  // namespace dsclust
