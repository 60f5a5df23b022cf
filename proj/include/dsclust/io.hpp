#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dsclust/benchmark.hpp"
#include "dsclust/evidence.hpp"

namespace dsclust {

// Shortest decimal representation that round-trips the exact double
// (std::to_chars); used for every float the tool writes so that outputs are
// byte-reproducible.
std::string format_double(double x);

// Evidence files are JSON lines: a {"frame_size": K} header, then one
// {"focal": [elements...], "support": s} object per piece. Element k maps
// to bit k-1; elements are written ascending.
std::vector<SimpleSupport> read_evidence(std::istream& in);
std::vector<SimpleSupport> read_evidence_file(const std::string& path);
void write_evidence(std::ostream& out, const std::vector<SimpleSupport>& evidence);

// CSV benchmark summary, one row per frame size. Header:
//   K,N,median_mcf,mean_mcf,median_per_cluster,mean_per_cluster,
//   median_per_evidence,mean_per_evidence,global_opt_pct,mean_time_s,
//   time_per_N2K2,time_per_N2log2N
std::string benchmark_csv(const std::vector<SuiteSummary>& rows);

// JSON-lines per-run log for the same suite.
std::string benchmark_jsonl(const std::vector<SuiteSummary>& rows);

}  // namespace dsclust
