#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsclust/benchmark.hpp"
#include "dsclust/errors.hpp"
#include "dsclust/oracle.hpp"
#include "support.hpp"

using namespace dsclust;

namespace {

SimpleSupport piece(int frame, std::vector<int> elements, double s) {
  return SimpleSupport{FocalSet::from_elements(frame, std::move(elements)), s};
}

// Full scan over all q^N assignments, no canonicalization. Slow but
// unarguable; used to show pinning the first piece loses nothing.
double full_scan_min(const std::vector<SimpleSupport>& ev, int q) {
  int n = static_cast<int>(ev.size());
  Partition p{std::vector<int>(n, 1), q};
  double best = -1.0;
  while (true) {
    double m = metaconflict(ev, p);
    if (best < 0.0 || m < best) best = m;
    int i = n - 1;
    while (i >= 0 && p.assignment[i] == q) p.assignment[i--] = 1;
    if (i < 0) break;
    p.assignment[i] += 1;
  }
  return best;
}

}  // namespace

TEST_CASE("benchmark instance at frame size 3 has an exact zero minimum") {
  BenchmarkInstance inst = generate_instance(3, 5);
  OracleResult r = enumerate_min(inst.evidence, 3);
  CHECK(r.min_metaconflict == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.partitions_scanned == 729);  // 3^6 with the first piece pinned
  CHECK(metaconflict(inst.evidence, r.best_partition) == r.min_metaconflict);
}

TEST_CASE("single piece of evidence needs no splitting") {
  std::vector<SimpleSupport> ev = {piece(2, {1}, 0.7)};
  OracleResult r = enumerate_min(ev, 4);
  CHECK(r.min_metaconflict == 0.0);
  CHECK(r.best_partition.assignment == std::vector<int>{1});
  CHECK(r.partitions_scanned == 1);
}

TEST_CASE("three mutually conflicting halves into two clusters") {
  std::vector<SimpleSupport> ev = {piece(3, {1}, 0.5), piece(3, {2}, 0.5),
                                   piece(3, {3}, 0.5)};
  OracleResult r = enumerate_min(ev, 2);
  // Some cluster holds a conflicting pair; the cheapest one costs 0.25.
  CHECK(r.min_metaconflict == doctest::Approx(0.25));
  CHECK(r.partitions_scanned == 4);
}

TEST_CASE("two pieces: linearized and exact objectives coincide") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto ev = testsupport::random_interval_cluster(4, 2, 0.999, rng);
    OracleResult r = enumerate_min(ev, 2);
    double exact_weight = -std::log1p(-r.min_metaconflict);
    CHECK(r.min_linearized == doctest::Approx(exact_weight).epsilon(1e-9));
    LinearizationGap g = linearization_gap(ev, 2);
    CHECK(g.gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g.argmin_agree);
  }
}

TEST_CASE("scan budget guard") {
  std::vector<SimpleSupport> ev;
  for (int i = 0; i < 16; ++i) ev.push_back(piece(20, {1 + (i % 20)}, 0.5));
  CHECK_THROWS_AS(enumerate_min(ev, 3), TooLargeError);  // 3^15 > 10^7
  CHECK_NOTHROW(enumerate_min(std::vector<SimpleSupport>(ev.begin(), ev.begin() + 6), 3));
}

TEST_CASE("pinning the first piece loses no minima") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng.next_below(3));  // 3..5
    std::vector<SimpleSupport> ev;
    for (int i = 0; i < n; ++i)
      ev.push_back(SimpleSupport{testsupport::random_subset(4, rng),
                                 0.9 * rng.next_open_double()});
    int q = 2 + static_cast<int>(rng.next_below(2));  // 2..3
    OracleResult r = enumerate_min(ev, q);
    CHECK(r.min_metaconflict == doctest::Approx(full_scan_min(ev, q)).epsilon(1e-12));
    CHECK(r.partitions_scanned ==
          static_cast<std::uint64_t>(std::pow(q, n - 1) + 0.5));
  }
}

TEST_CASE("linearized objective bounds the exact weight on interval evidence") {
  // Interval focal sets make every minimal conflicting family a pair, which
  // is the regime where the pairwise sum is a true upper bound.
  SplitMix64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto ev = testsupport::random_interval_cluster(5, 6, 0.95, rng);
    Partition p{std::vector<int>(6, 1), 2};
    // check the bound on every scanned partition via the oracle's own values
    int n = 6;
    while (true) {
      double lin = linearized_metaconflict(ev, p);
      double exact = metaconflict(ev, p);
      CHECK(lin >= -std::log1p(-exact) - 1e-9);
      int i = n - 1;
      while (i >= 0 && p.assignment[i] == 2) p.assignment[i--] = 1;
      if (i < 0) break;
      p.assignment[i] += 1;
    }
  }
}

TEST_CASE("linearization gap is nonnegative and consistent on random subsets") {
  SplitMix64 rng(34);
  int agree = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SimpleSupport> ev;
    for (int i = 0; i < 7; ++i)
      ev.push_back(SimpleSupport{testsupport::random_subset(4, rng),
                                 0.9 * rng.next_open_double()});
    LinearizationGap g = linearization_gap(ev, 2);
    CHECK(g.gap >= -1e-12);
    CHECK(g.argmin_agree == (g.gap <= 1e-9));
    if (g.argmin_agree) ++agree;
  }
  // The surrogate is good on most small instances; if this starts failing
  // the annealer's objective has drifted from the exact one.
  CHECK(agree >= 30);
}

TEST_CASE("a piece conflicting with everything cannot lower the minimum") {
  SplitMix64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    // Evidence confined to elements 1..4 of a 5-element frame, so {5} is
    // disjoint from all of it.
    std::vector<SimpleSupport> ev;
    for (int i = 0; i < 5; ++i) {
      FocalSet small = testsupport::random_subset(4, rng);
      ev.push_back(SimpleSupport{FocalSet{5, small.bits},
                                 0.9 * rng.next_open_double()});
    }
    OracleResult before = enumerate_min(ev, 2);
    ev.push_back(piece(5, {5}, 0.5));
    OracleResult after = enumerate_min(ev, 2);
    CHECK(after.min_metaconflict >= before.min_metaconflict - 1e-12);
  }
}

TEST_CASE("more clusters never raise the minimum") {
  SplitMix64 rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SimpleSupport> ev;
    for (int i = 0; i < 6; ++i)
      ev.push_back(SimpleSupport{testsupport::random_subset(4, rng),
                                 0.9 * rng.next_open_double()});
    OracleResult q2 = enumerate_min(ev, 2);
    OracleResult q3 = enumerate_min(ev, 3);
    CHECK(q3.min_metaconflict <= q2.min_metaconflict + 1e-12);
    CHECK(q3.min_linearized <= q2.min_linearized + 1e-12);
  }
}

TEST_CASE("minimizing within-cluster conflict maximizes between-cluster conflict") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<SimpleSupport> ev;
    for (int i = 0; i < 6; ++i)
      ev.push_back(SimpleSupport{testsupport::random_subset(4, rng),
                                 0.9 * rng.next_open_double()});
    double total = 0.0;
    for (std::size_t a = 0; a < ev.size(); ++a)
      for (std::size_t b = a + 1; b < ev.size(); ++b)
        total += pairwise_conflict(ev[a], ev[b]);

    // Exhaustively confirm within + between = total, so the two argmins
    // are the same partition.
    Partition p{std::vector<int>(6, 1), 2};
    double best_within = -1.0, best_between = -1.0;
    std::vector<int> argmin_within, argmax_between;
    while (true) {
      double within = linearized_metaconflict(ev, p);
      double between = total - within;
      if (best_within < 0.0 || within < best_within) {
        best_within = within;
        argmin_within = p.assignment;
      }
      if (best_between < 0.0 || between > best_between) {
        best_between = between;
        argmax_between = p.assignment;
      }
      int i = 5;
      while (i >= 0 && p.assignment[i] == 2) p.assignment[i--] = 1;
      if (i < 0) break;
      p.assignment[i] += 1;
    }
    CHECK(argmin_within == argmax_between);
    CHECK(best_within + best_between == doctest::Approx(total));
  }
}

TEST_CASE("linearized argmin is reported alongside the exact one") {
  SplitMix64 rng(38);
  std::vector<SimpleSupport> ev;
  for (int i = 0; i < 6; ++i)
    ev.push_back(SimpleSupport{testsupport::random_subset(4, rng),
                               0.9 * rng.next_open_double()});
  OracleResult exact = enumerate_min(ev, 2, Objective::kExact);
  OracleResult lin = enumerate_min(ev, 2, Objective::kLinearized);
  CHECK(exact.linearized_argmin.assignment == lin.best_partition.assignment);
  CHECK(lin.min_metaconflict == exact.min_metaconflict);
  CHECK(linearized_metaconflict(ev, lin.best_partition) ==
        doctest::Approx(lin.min_linearized));
}
