#include "dsclust/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dsclust {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::vector<SimpleSupport> read_evidence(std::istream& in) {
  std::string line;
  int frame_size = 0;
  bool have_header = false;
  std::vector<SimpleSupport> out;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj = nlohmann::json::parse(line);
    if (!have_header) {
      if (!obj.contains("frame_size"))
        throw std::runtime_error("evidence file must start with a frame_size header");
      frame_size = obj.at("frame_size").get<int>();
      if (frame_size < 1 || frame_size > 64)
        throw std::runtime_error("frame_size must be in 1..64");
      have_header = true;
      continue;
    }
    std::vector<int> elements = obj.at("focal").get<std::vector<int>>();
    double support = obj.at("support").get<double>();
    if (support < 0.0 || support > 1.0)
      throw std::runtime_error("support outside [0,1] at line " + std::to_string(lineno));
    out.push_back(SimpleSupport{FocalSet::from_elements(frame_size, elements), support});
  }
  if (!have_header) throw std::runtime_error("empty evidence file");
  return out;
}

std::vector<SimpleSupport> read_evidence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open evidence file: " + path);
  return read_evidence(in);
}

void write_evidence(std::ostream& out, const std::vector<SimpleSupport>& evidence) {
  if (evidence.empty()) throw std::invalid_argument("no evidence to write");
  int frame_size = evidence.front().focal.frame_size;
  out << "{\"frame_size\":" << frame_size << "}\n";
  for (const auto& e : evidence) {
    if (e.focal.frame_size != frame_size)
      throw FrameMismatchError("write_evidence: mixed frames");
    out << "{\"focal\":[";
    bool first = true;
    for (int el : e.focal.elements()) {
      if (!first) out << ',';
      out << el;
      first = false;
    }
    out << "],\"support\":" << format_double(e.support) << "}\n";
  }
}

std::string benchmark_csv(const std::vector<SuiteSummary>& rows) {
  std::ostringstream out;
  out << "K,N,median_mcf,mean_mcf,median_per_cluster,mean_per_cluster,"
         "median_per_evidence,mean_per_evidence,global_opt_pct,mean_time_s,"
         "time_per_N2K2,time_per_N2log2N\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << format_double(r.median_mcf) << ','
        << format_double(r.mean_mcf) << ',' << format_double(r.median_per_cluster)
        << ',' << format_double(r.mean_per_cluster) << ','
        << format_double(r.median_per_evidence) << ','
        << format_double(r.mean_per_evidence) << ','
        << format_double(r.global_opt_pct) << ',' << format_double(r.mean_time_s)
        << ',' << format_double(r.time_per_n2k2) << ','
        << format_double(r.time_per_n2log2n) << '\n';
  }
  return out.str();
}

std::string benchmark_jsonl(const std::vector<SuiteSummary>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.per_run.size(); ++i) {
      const RunMetrics& m = r.per_run[i];
      out << "{\"k\":" << r.k << ",\"run\":" << i
          << ",\"metaconflict\":" << format_double(m.metaconflict)
          << ",\"per_cluster\":" << format_double(m.per_cluster)
          << ",\"per_evidence\":" << format_double(m.per_evidence)
          << ",\"time_s\":" << format_double(m.time_s) << ",\"sweeps\":" << m.sweeps
          << ",\"hit_global\":" << (m.hit_global ? "true" : "false")
          << ",\"frozen\":" << (m.frozen ? "true" : "false") << "}\n";
    }
  }
  return out.str();
}

}  // namespace dsclust
