#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "hhm_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(HHM_CLI_PATH) + " " + args + " >" +
                          (scratch() / "stdout.txt").string() + " 2>" +
                          (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string out() { return slurp(scratch() / "stdout.txt"); }

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify --batches 10") == 0);
  CHECK(out().find("PASS") != std::string::npos);
  CHECK(run("verify --batches 10 --cuts ''") == 0);
  CHECK(run("verify --batches 10 --inject-fault") == 1);
  CHECK(out().find("FAIL: (") != std::string::npos);
  CHECK(run("verify --batches 1000") == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("bench --cuts 100,100") == 2);
  CHECK(run("bench --skew 0.1,0.2,0.3,0.4") == 2);
  CHECK(run("bench --workers 0") == 2);
  CHECK(run("bench --format xml --batches 2 --warmup 0 --batch-size 10") == 2);
  CHECK(run("bench --no-such-flag") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("bench writes a report") {
  const auto path = scratch() / "report.json";
  CHECK(run("bench --workers 2 --batches 6 --warmup 2 --batch-size 1000 --cuts 64,512 "
            "--seed 5 --mode hierarchical --pregen false --output " + path.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["workers"].size() == 2);
  CHECK(j["workers"][0]["triples_ingested"] == 2000);
  CHECK(j["config"]["pregen"] == false);
  CHECK(j["config"]["seed"] == 5);

  const auto csv = scratch() / "report.csv";
  CHECK(run("bench --batches 3 --warmup 1 --batch-size 100 --format csv --output " +
            csv.string()) == 0);
  CHECK(slurp(csv).rfind("worker_id,", 0) == 0);

  CHECK(run("bench --batches 3 --warmup 1 --batch-size 100 --output /nonexistent/x.json") == 3);
}

TEST_CASE("gen then ingest") {
  const auto edges = scratch() / "edges.tsv";
  CHECK(run("gen --batches 3 --batch-size 1000 --scale 16 --output " + edges.string()) == 0);
  const auto text = slurp(edges);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3000);

  CHECK(run("ingest " + edges.string() + " --scale 16 --cuts 100,1000") == 0);
  CHECK(out().find("triples: 3000") != std::string::npos);
  CHECK(out().find("value sum: 3000") != std::string::npos);

  // Indices from a 2^16 stream do not fit a 2^4 matrix.
  CHECK(run("ingest " + edges.string() + " --scale 4") == 3);
}

TEST_CASE("ingest input errors exit with 3") {
  const auto bad = scratch() / "bad.tsv";
  std::ofstream(bad) << "a\tb\tc\n";
  CHECK(run("ingest " + bad.string()) == 3);
  CHECK(slurp(scratch() / "stderr.txt").find("line 1") != std::string::npos);
  CHECK(run("ingest " + (scratch() / "missing.tsv").string()) == 3);

  const auto sample = scratch() / "sample.tsv";
  std::ofstream(sample) << "0\t1\t5\n0\t2\t3\n0\t1\t2\n";
  CHECK(run("ingest " + sample.string()) == 0);
  CHECK(out().find("nnz: 2\n") != std::string::npos);
  CHECK(out().find("value sum: 10\n") != std::string::npos);
  CHECK(out().find("top rows: 0->10\n") != std::string::npos);
}
