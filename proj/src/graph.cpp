#include "dsclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsclust {
namespace {

struct UnionFind {
  std::vector<int> parent, rank_;

  explicit UnionFind(int n) : parent(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) rank_[a] += 1;
  }
};

std::vector<std::vector<int>> components_of(UnionFind& uf, int n) {
  std::vector<std::vector<int>> comps;
  std::vector<int> index(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    if (index[r] < 0) {
      index[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[index[r]].push_back(i);
  }
  return comps;  // sites ascending; components ordered by smallest site
}

}  // namespace

BondGraph bond_probabilities(const InteractionMatrix& j, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  BondGraph g;
  g.n = j.n;
  g.p.assign(static_cast<std::size_t>(j.n) * j.n, 0.0);
  g.present.assign(g.p.size(), 0);
  for (int a = 0; a < j.n; ++a) {
    for (int b = a + 1; b < j.n; ++b) {
      double w = j.at(a, b);
      if (w == 0.0) continue;
      double p = -std::expm1(-beta * w);  // 1 - exp(-beta*J), stays < 1
      g.p[static_cast<std::size_t>(a) * j.n + b] = p;
      g.p[static_cast<std::size_t>(b) * j.n + a] = p;
      g.present[static_cast<std::size_t>(a) * j.n + b] = 1;
      g.present[static_cast<std::size_t>(b) * j.n + a] = 1;
      g.edges.emplace_back(a, b);
    }
  }
  return g;
}

std::vector<std::vector<int>> extract_bond_clusters(const BondGraph& g,
                                                    double threshold) {
  UnionFind uf(g.n);
  for (const auto& [a, b] : g.edges)
    if (g.p_at(a, b) <= threshold) uf.unite(a, b);
  return components_of(uf, g.n);
}

double joint_weight(const BondGraph& g, const SpinConfiguration& sigma,
                    const BondState& bonds, int q) {
  if (sigma.size() != static_cast<std::size_t>(g.n))
    throw std::invalid_argument("joint_weight: spin count mismatch");
  if (bonds.occupied.size() != g.edges.size())
    throw std::invalid_argument("joint_weight: bond count mismatch");
  for (int s : sigma)
    if (s < 1 || s > q) throw std::invalid_argument("spin outside 1..q");

  double w = 1.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    double p = g.p_at(a, b);
    if (bonds.occupied[e])
      w *= 1.0 - p;
    else
      w *= sigma[a] != sigma[b] ? p : 0.0;
  }
  return w;
}

MarginalCheck verify_marginals(const InteractionMatrix& j, const BondGraph& g,
                               double beta, int q) {
  const int n = g.n;
  const std::size_t ne = g.edges.size();
  double states = std::pow(static_cast<double>(q), n) * std::ldexp(1.0, static_cast<int>(ne));
  if (states > 1e7) throw TooLargeError("verify_marginals: state space exceeds 10^7");

  const std::uint64_t nspin = [&] {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= q;
    return r;
  }();
  const std::uint64_t nbond = 1ull << ne;

  // Unnormalized joint summed over bonds per spin config, plus the full
  // per-spin-config bond distribution for the conditional comparison.
  std::vector<double> spin_weight(nspin, 0.0);
  std::vector<double> joint(nspin * nbond, 0.0);

  SpinConfiguration sigma(n);
  BondState bonds;
  bonds.occupied.resize(ne);
  for (std::uint64_t si = 0; si < nspin; ++si) {
    std::uint64_t code = si;
    for (int i = 0; i < n; ++i) {
      sigma[i] = static_cast<int>(code % q) + 1;
      code /= q;
    }
    for (std::uint64_t bi = 0; bi < nbond; ++bi) {
      for (std::size_t e = 0; e < ne; ++e) bonds.occupied[e] = (bi >> e) & 1u;
      double w = joint_weight(g, sigma, bonds, q);
      spin_weight[si] += w;
      joint[si * nbond + bi] = w;
    }
  }

  // Reference Potts weights exp(-beta * sum_edges J * [sigma_a == sigma_b]).
  std::vector<double> potts(nspin, 0.0);
  double zj = 0.0, zp = 0.0;
  for (std::uint64_t si = 0; si < nspin; ++si) {
    std::uint64_t code = si;
    for (int i = 0; i < n; ++i) {
      sigma[i] = static_cast<int>(code % q) + 1;
      code /= q;
    }
    double en = 0.0;
    for (const auto& [a, b] : g.edges)
      if (sigma[a] == sigma[b]) en += j.at(a, b);
    potts[si] = std::exp(-beta * en);
    zj += spin_weight[si];
    zp += potts[si];
  }

  MarginalCheck out;
  double tv = 0.0;
  for (std::uint64_t si = 0; si < nspin; ++si)
    tv += std::abs(spin_weight[si] / zj - potts[si] / zp);
  out.tv_spin = 0.5 * tv;

  // Conditional law: given the spins, each bond is independent; equal
  // endpoints force occupation, unequal ones leave it vacant with
  // probability p. Compare the enumerated conditional against that product
  // and keep the worst spin configuration's total variation.
  for (std::uint64_t si = 0; si < nspin; ++si) {
    if (spin_weight[si] <= 0.0) continue;
    std::uint64_t code = si;
    for (int i = 0; i < n; ++i) {
      sigma[i] = static_cast<int>(code % q) + 1;
      code /= q;
    }
    double tv_here = 0.0;
    for (std::uint64_t bi = 0; bi < nbond; ++bi) {
      double closed = 1.0;
      for (std::size_t e = 0; e < ne; ++e) {
        auto [a, b] = g.edges[e];
        bool on = (bi >> e) & 1u;
        if (sigma[a] == sigma[b])
          closed *= on ? 1.0 : 0.0;
        else
          closed *= on ? 1.0 - g.p_at(a, b) : g.p_at(a, b);
      }
      tv_here += std::abs(joint[si * nbond + bi] / spin_weight[si] - closed);
    }
    out.tv_cond = std::max(out.tv_cond, 0.5 * tv_here);
  }
  return out;
}

double graph_distribution_weight(const BondGraph& g, const BondState& bonds, int q) {
  if (bonds.occupied.size() != g.edges.size())
    throw std::invalid_argument("graph_distribution_weight: bond count mismatch");

  UnionFind uf(g.n);
  double edge_factor = 1.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    double p = g.p_at(a, b);
    if (bonds.occupied[e]) {
      uf.unite(a, b);
      edge_factor *= 1.0 - p;
    } else {
      edge_factor *= p;
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (!bonds.occupied[e] && uf.find(a) == uf.find(b))
      throw NotGroundStateFormError("vacant bond inside an occupied bond-cluster");
  }

  auto comps = components_of(uf, g.n);
  int c = static_cast<int>(comps.size());
  if (c > q) return 0.0;

  // Composition sum over cluster spin-pool sizes; compositions with a zero
  // part contribute q_a^{N_a} = 0, so only positive parts are walked.
  std::vector<int> sizes(c);
  for (int i = 0; i < c; ++i) sizes[i] = static_cast<int>(comps[i].size());
  double q_fact = 1.0;
  for (int i = 2; i <= q; ++i) q_fact *= i;

  double combinatorial = 0.0;
  std::vector<int> parts(c);
  auto walk = [&](auto&& self, int idx, int left) -> void {
    if (idx == c - 1) {
      parts[idx] = left;
      double term = q_fact;
      for (int i = 0; i < c; ++i) {
        double f = 1.0;
        for (int x = 2; x <= parts[i]; ++x) f *= x;
        term = term / f * std::pow(static_cast<double>(parts[i]), sizes[i]);
      }
      combinatorial += term;
      return;
    }
    for (int take = 1; take <= left - (c - 1 - idx); ++take) {
      parts[idx] = take;
      self(self, idx + 1, left - take);
    }
  };
  walk(walk, 0, q);

  return combinatorial * edge_factor;
}

}  // namespace dsclust
