#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "dsclust/evidence.hpp"
#include "dsclust/io.hpp"

using namespace dsclust;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "dsclust_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  fs::path out_path = work_dir() / "stdout.txt";
  std::string cmd = std::string(DSCLUST_CLI_PATH) + " " + args + " > " +
                    out_path.string() + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  return r;
}

}  // namespace

TEST_CASE("generate then solve recovers a conflict-free clustering") {
  fs::path ev = work_dir() / "k3.jsonl";
  CommandResult gen = run_cli("generate --k 3 --seed 1 --out " + ev.string());
  CHECK(gen.exit_code == 0);

  CommandResult solve = run_cli("solve --in " + ev.string() + " --q 3");
  CHECK(solve.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(solve.out);
  CHECK(doc.at("metaconflict").get<double>() <= 1e-9);
  CHECK(doc.at("partition").size() == 7);
  CHECK(doc.at("cluster_count").get<int>() == 3);
  CHECK(doc.at("frozen").get<bool>());
  CHECK(doc.at("saturation").get<double>() >= 0.99);
}

TEST_CASE("generated file round-trips through the evidence reader") {
  fs::path ev = work_dir() / "k4.jsonl";
  CHECK(run_cli("generate --k 4 --seed 7 --out " + ev.string()).exit_code == 0);
  std::string original = slurp(ev);

  std::vector<SimpleSupport> parsed = read_evidence_file(ev.string());
  REQUIRE(parsed.size() == 15);
  std::ostringstream rewritten;
  write_evidence(rewritten, parsed);
  CHECK(rewritten.str() == original);
}

TEST_CASE("solving a single piece of evidence is trivial") {
  fs::path ev = work_dir() / "one.jsonl";
  spit(ev, "{\"frame_size\":3}\n{\"focal\":[1,2],\"support\":0.7}\n");
  CommandResult r = run_cli("solve --in " + ev.string() + " --q 2");
  CHECK(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("partition") == nlohmann::json::array({1}));
  CHECK(doc.at("metaconflict").get<double>() == 0.0);
}

TEST_CASE("oracle subcommand reports the exhaustive minimum") {
  fs::path ev = work_dir() / "three_halves.jsonl";
  spit(ev,
       "{\"frame_size\":3}\n"
       "{\"focal\":[1],\"support\":0.5}\n"
       "{\"focal\":[2],\"support\":0.5}\n"
       "{\"focal\":[3],\"support\":0.5}\n");
  CommandResult r = run_cli("oracle --in " + ev.string() + " --q 2");
  CHECK(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("min_metaconflict").get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(doc.at("partitions_scanned").get<int>() == 4);
}

TEST_CASE("oracle objective flag switches the reported argmin") {
  fs::path ev = work_dir() / "k3b.jsonl";
  CHECK(run_cli("generate --k 3 --seed 5 --out " + ev.string()).exit_code == 0);
  CommandResult exact = run_cli("oracle --in " + ev.string() + " --q 3 --objective exact");
  CommandResult lin = run_cli("oracle --in " + ev.string() + " --q 3 --objective linearized");
  CHECK(exact.exit_code == 0);
  CHECK(lin.exit_code == 0);
  nlohmann::json de = nlohmann::json::parse(exact.out);
  nlohmann::json dl = nlohmann::json::parse(lin.out);
  CHECK(de.at("min_metaconflict") == dl.at("min_metaconflict"));
  CHECK(de.at("min_linearized") == dl.at("min_linearized"));
  CHECK(dl.at("best_partition") == dl.at("linearized_argmin"));
}

TEST_CASE("benchmark subcommand writes the summary csv and per-run log") {
  fs::path csv = work_dir() / "bench.csv";
  fs::path jsonl = work_dir() / "bench_runs.jsonl";
  CommandResult r = run_cli("benchmark --k-min 3 --k-max 4 --runs 2 --seed 3 --out " +
                            csv.string() + " --runs-out " + jsonl.string());
  CHECK(r.exit_code == 0);

  std::istringstream rows(slurp(csv));
  std::string line;
  REQUIRE(std::getline(rows, line));
  CHECK(line ==
        "K,N,median_mcf,mean_mcf,median_per_cluster,mean_per_cluster,"
        "median_per_evidence,mean_per_evidence,global_opt_pct,mean_time_s,"
        "time_per_N2K2,time_per_N2log2N");
  int data_rows = 0;
  while (std::getline(rows, line))
    if (!line.empty()) ++data_rows;
  CHECK(data_rows == 2);

  std::istringstream runs(slurp(jsonl));
  int run_rows = 0;
  while (std::getline(runs, line)) {
    nlohmann::json rec = nlohmann::json::parse(line);
    CHECK(rec.at("k").get<int>() >= 3);
    CHECK(rec.at("metaconflict").get<double>() >= 0.0);
    ++run_rows;
  }
  CHECK(run_rows == 4);
}

TEST_CASE("identical seeds give byte-identical outputs") {
  fs::path a = work_dir() / "det_a.jsonl";
  fs::path b = work_dir() / "det_b.jsonl";
  CHECK(run_cli("generate --k 5 --seed 42 --out " + a.string()).exit_code == 0);
  CHECK(run_cli("generate --k 5 --seed 42 --out " + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  CommandResult s1 = run_cli("solve --in " + a.string() + " --q 5 --seed 2");
  CommandResult s2 = run_cli("solve --in " + b.string() + " --q 5 --seed 2");
  CHECK(s1.out == s2.out);
  CHECK(run_cli("generate --k 5 --seed 43 --out " + b.string()).exit_code == 0);
  CHECK(slurp(a) != slurp(b));
}

TEST_CASE("config file supplies defaults and explicit flags win") {
  fs::path ev = work_dir() / "k3c.jsonl";
  fs::path cfg = work_dir() / "cfg.json";
  CHECK(run_cli("generate --k 3 --seed 2 --out " + ev.string()).exit_code == 0);
  spit(cfg, "{\"q\":3,\"seed\":4}\n");

  CommandResult from_cfg = run_cli("solve --in " + ev.string() + " --config " + cfg.string());
  CommandResult from_flags = run_cli("solve --in " + ev.string() + " --q 3 --seed 4");
  CHECK(from_cfg.exit_code == 0);
  CHECK(from_cfg.out == from_flags.out);

  CommandResult overridden =
      run_cli("solve --in " + ev.string() + " --config " + cfg.string() + " --seed 5");
  CommandResult direct = run_cli("solve --in " + ev.string() + " --q 3 --seed 5");
  CHECK(overridden.out == direct.out);

  spit(cfg, "{\"q\":3,\"typo_key\":1}\n");
  CHECK(run_cli("solve --in " + ev.string() + " --config " + cfg.string()).exit_code == 1);
}

TEST_CASE("graph-check reports clean identities on tiny instances") {
  CommandResult r = run_cli("graph-check --n 4 --q 3 --beta 1 --seed 11");
  CHECK(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("tv_spin").get<double>() <= 1e-10);
  CHECK(doc.at("tv_cond").get<double>() <= 1e-10);
  CHECK(doc.at("cluster_bound_ok").get<bool>());
  CHECK(doc.at("weight_ok").get<bool>());
  CHECK(doc.at("ok").get<bool>());
  CHECK(doc.at("edges").get<int>() == 6);
}

TEST_CASE("exit codes distinguish usage, not-frozen, and too-large") {
  fs::path ev = work_dir() / "k3d.jsonl";
  CHECK(run_cli("generate --k 3 --seed 1 --out " + ev.string()).exit_code == 0);

  CHECK(run_cli("nonsense").exit_code == 1);
  CHECK(run_cli("solve --in " + ev.string() + " --q 3 --walrus 1").exit_code == 1);
  CHECK(run_cli("solve --in " + ev.string()).exit_code == 1);
  CHECK(run_cli("generate --k 99").exit_code == 1);
  CHECK(run_cli("solve --in " + ev.string() + " --q 3 --max-temps 2").exit_code == 2);

  fs::path big = work_dir() / "big.jsonl";
  std::ostringstream evid;
  evid << "{\"frame_size\":16}\n";
  for (int i = 1; i <= 16; ++i)
    evid << "{\"focal\":[" << i << "],\"support\":0.5}\n";
  spit(big, evid.str());
  CHECK(run_cli("oracle --in " + big.string() + " --q 3").exit_code == 3);
}

TEST_CASE("help is reachable and exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}
