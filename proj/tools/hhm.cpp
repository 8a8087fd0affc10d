// hhm: streaming-insert benchmark and tooling for hierarchical hypersparse
// matrices.
//
//   hhm bench  [--workers N] [stream flags] [--cuts ...] [--mode ...] ...
//   hhm verify [stream flags] [--cuts ...]
//   hhm ingest PATH [--cuts ...] [--scale B]
//   hhm gen    [stream flags] --output PATH
//
// Exit codes: 0 success, 1 verification mismatch or runtime failure,
// 2 configuration error, 3 I/O or input-file error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hhm/bench.hpp"
#include "hhm/error.hpp"
#include "hhm/report.hpp"
#include "hhm/tsv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct StreamFlags {
  unsigned scale = 32;
  std::string skew = "0.57,0.19,0.19,0.05";
  std::uint64_t batch_size = 100'000;
  std::uint64_t batches = 100;
  std::uint64_t seed = 1;
  std::string value_mode = "ones";

  void attach(CLI::App& app) {
    app.add_option("--scale", scale, "Bits per index; matrices are 2^B x 2^B")
        ->capture_default_str();
    app.add_option("--skew", skew, "R-MAT quadrant probabilities a,b,c,d")
        ->capture_default_str();
    app.add_option("--batch-size", batch_size, "Triples per batch")->capture_default_str();
    app.add_option("--batches", batches, "Number of batches")->capture_default_str();
    app.add_option("--seed", seed, "Stream seed")->capture_default_str();
    app.add_option("--value-mode", value_mode, "ones|random")->capture_default_str();
  }

  hhm::StreamConfig config() const {
    hhm::StreamConfig s;
    s.scale = scale;
    s.skew = hhm::Skew::parse(skew);
    s.batch_size = batch_size;
    s.num_batches = batches;
    s.seed = seed;
    s.value_mode = hhm::parse_value_mode(value_mode);
    s.validate();
    return s;
  }
};

void print_levels(std::ostream& out, const char* label,
                  const std::vector<std::uint64_t>& v) {
  out << label << ":";
  for (auto n : v) out << ' ' << n;
  out << '\n';
}

int cmd_bench(const StreamFlags& flags, std::uint32_t workers,
              std::uint64_t warmup, const std::string& cuts,
              const std::string& mode, bool pregen, const std::string& output,
              const std::string& format) {
  hhm::BenchConfig cfg;
  cfg.workers = workers;
  cfg.stream = flags.config();
  cfg.cuts = hhm::CutSchedule::parse(cuts);
  cfg.mode = hhm::parse_mode(mode);
  cfg.warmup_batches = warmup;
  cfg.pregen = pregen;
  const auto fmt = hhm::parse_report_format(format);

  const auto report = hhm::run_bench(cfg);
  for (const auto& w : report.workers) {
    std::cerr << "worker " << w.worker_id << ": " << w.triples_ingested
              << " updates in " << w.wall_seconds << " s = "
              << w.updates_per_second << " updates/s\n";
  }
  std::cerr << "aggregate: " << report.aggregate_updates_per_second
            << " updates/s over " << report.wall_seconds << " s\n";

  if (output.empty() || output == "-") {
    if (fmt == hhm::ReportFormat::json) {
      std::cout << hhm::to_json(report).dump(2) << '\n';
    } else {
      std::cout << hhm::to_csv(report);
    }
  } else {
    hhm::emit_report(report, fmt, output);
  }
  return kExitOk;
}

int cmd_verify(const StreamFlags& flags, const std::string& cuts,
               bool inject_fault) {
  hhm::VerifyConfig cfg;
  cfg.stream = flags.config();
  cfg.cuts = hhm::CutSchedule::parse(cuts);
  cfg.inject_fault = inject_fault;

  const auto result = hhm::run_verify(cfg);
  std::cout << "triples: " << result.triples << '\n';
  print_levels(std::cout, "cascades per level", result.cascades_per_level);
  print_levels(std::cout, "final nnz per level", result.layer_nnz);
  if (result.passed) {
    std::cout << "PASS\n";
    return kExitOk;
  }
  std::cout << "FAIL: " << result.diagnostic << '\n';
  return kExitMismatch;
}

int cmd_ingest(const std::string& path, const std::string& cuts, unsigned scale) {
  if (scale < 1 || scale > 63) throw hhm::ConfigError("scale must be in [1, 63]");
  hhm::IngestConfig cfg;
  cfg.cuts = hhm::CutSchedule::parse(cuts);
  cfg.nrows = cfg.ncols = hhm::Index{1} << scale;

  const auto s = hhm::run_ingest(path, cfg);
  std::cout << "triples: " << s.triples << '\n'
            << "nnz: " << s.nnz << '\n'
            << "value sum: " << s.value_sum << '\n';
  std::cout << "top rows:";
  for (const auto& [row, v] : s.top_rows) std::cout << ' ' << row << "->" << v;
  std::cout << "\ntop cols:";
  for (const auto& [col, v] : s.top_cols) std::cout << ' ' << col << "->" << v;
  std::cout << '\n'
            << "wall seconds: " << s.wall_seconds << '\n'
            << "updates/s: " << s.updates_per_second << '\n';
  return kExitOk;
}

int cmd_gen(const StreamFlags& flags, const std::string& output) {
  const auto cfg = flags.config();
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (output != "-") {
    file.open(output, std::ios::binary | std::ios::trunc);
    if (!file) throw hhm::IoError("cannot open '" + output + "' for writing");
    out = &file;
  }
  std::vector<hhm::EdgeTriple> batch;
  for (std::uint64_t k = 0; k < cfg.num_batches; ++k) {
    hhm::generate_batch_into(cfg, k, batch);
    hhm::write_tsv(*out, batch);
  }
  out->flush();
  if (!*out) throw hhm::IoError("failed writing '" + output + "'");
  std::cerr << "wrote " << cfg.total_triples() << " triples in "
            << cfg.num_batches << " batches\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical hypersparse matrix streaming-insert tools"};
  app.require_subcommand(1);

  std::string cuts = hhm::CutSchedule::defaults().to_string();

  auto* bench = app.add_subcommand("bench", "Multi-worker streaming-insert benchmark");
  StreamFlags bench_stream;
  bench_stream.attach(*bench);
  std::uint32_t workers = 1;
  std::uint64_t warmup = 10;
  std::string mode = "hierarchical";
  bool pregen = true;
  std::string output;
  std::string format = "json";
  bench->add_option("--workers", workers, "Independent workers")->capture_default_str();
  bench->add_option("--warmup", warmup, "Untimed leading batches")->capture_default_str();
  bench->add_option("--cuts", cuts, "Cut schedule c1,c2,... (empty for one level)")
      ->capture_default_str();
  bench->add_option("--mode", mode, "hierarchical|flat")->capture_default_str();
  bench->add_option("--pregen", pregen, "Generate batches before timing (true|false)")
      ->capture_default_str();
  bench->add_option("--output", output, "Report path (stdout when omitted)");
  bench->add_option("--format", format, "json|csv")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check the hierarchy against a flat oracle");
  StreamFlags verify_stream;
  verify_stream.batch_size = 10'000;
  verify_stream.batches = 50;
  verify_stream.attach(*verify);
  bool inject_fault = false;
  verify->add_option("--cuts", cuts, "Cut schedule c1,c2,... (empty for one level)")
      ->capture_default_str();
  verify->add_flag("--inject-fault", inject_fault)->group("");

  auto* ingest = app.add_subcommand("ingest", "Load a TSV edge list and summarize it");
  std::string path;
  unsigned ingest_scale = 32;
  ingest->add_option("path", path, "Edge-list file")->required();
  ingest->add_option("--cuts", cuts, "Cut schedule c1,c2,... (empty for one level)")
      ->capture_default_str();
  ingest->add_option("--scale", ingest_scale, "Bits per index")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "Write a generated stream as a TSV edge list");
  StreamFlags gen_stream;
  gen_stream.attach(*gen);
  std::string gen_output;
  gen->add_option("--output", gen_output, "Destination ('-' for stdout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*bench) {
      return cmd_bench(bench_stream, workers, warmup, cuts, mode, pregen, output, format);
    }
    if (*verify) return cmd_verify(verify_stream, cuts, inject_fault);
    if (*ingest) return cmd_ingest(path, cuts, ingest_scale);
    if (*gen) return cmd_gen(gen_stream, gen_output);
  } catch (const hhm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hhm::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const hhm::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitOk;
}
