#include "hhm/report.hpp"

#include <fstream>
#include <sstream>

#include "hhm/error.hpp"

namespace hhm {

using nlohmann::json;
using nlohmann::ordered_json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw ConfigError("format must be 'json' or 'csv', got '" + s + "'");
}

ordered_json to_json(const BenchReport& report) {
  const auto& c = report.config;
  ordered_json config = {
      {"workers", c.workers},
      {"scale", c.stream.scale},
      {"skew", {c.stream.skew.a, c.stream.skew.b, c.stream.skew.c, c.stream.skew.d}},
      {"batch_size", c.stream.batch_size},
      {"num_batches", c.stream.num_batches},
      {"seed", c.stream.seed},
      {"value_mode", to_string(c.stream.value_mode)},
      {"cuts", std::vector<std::uint64_t>(c.cuts.cuts().begin(), c.cuts.cuts().end())},
      {"mode", to_string(c.mode)},
      {"warmup_batches", c.warmup_batches},
      {"pregen", c.pregen},
  };
  ordered_json workers = ordered_json::array();
  for (const auto& w : report.workers) {
    workers.push_back({
        {"worker_id", w.worker_id},
        {"triples_ingested", w.triples_ingested},
        {"wall_seconds", w.wall_seconds},
        {"updates_per_second", w.updates_per_second},
        {"updates_applied", w.cascade.updates_applied},
        {"cascades_per_level", w.cascade.cascades_per_level},
        {"entries_promoted_per_level", w.cascade.entries_promoted_per_level},
    });
  }
  return {
      {"config", std::move(config)},
      {"workers", std::move(workers)},
      {"aggregate_updates_per_second", report.aggregate_updates_per_second},
      {"wall_seconds", report.wall_seconds},
      {"timestamp", report.timestamp},
  };
}

BenchReport bench_report_from_json(const json& j) {
  try {
    BenchReport r;
    const auto& c = j.at("config");
    r.config.workers = c.at("workers").get<std::uint32_t>();
    r.config.stream.scale = c.at("scale").get<unsigned>();
    const auto skew = c.at("skew").get<std::vector<double>>();
    if (skew.size() != 4) throw ConfigError("report skew must have four values");
    r.config.stream.skew = {skew[0], skew[1], skew[2], skew[3]};
    r.config.stream.batch_size = c.at("batch_size").get<std::uint64_t>();
    r.config.stream.num_batches = c.at("num_batches").get<std::uint64_t>();
    r.config.stream.seed = c.at("seed").get<std::uint64_t>();
    r.config.stream.value_mode = parse_value_mode(c.at("value_mode").get<std::string>());
    r.config.cuts = CutSchedule(c.at("cuts").get<std::vector<std::uint64_t>>());
    r.config.mode = parse_mode(c.at("mode").get<std::string>());
    r.config.warmup_batches = c.at("warmup_batches").get<std::uint64_t>();
    r.config.pregen = c.at("pregen").get<bool>();

    for (const auto& w : j.at("workers")) {
      WorkerResult wr;
      wr.worker_id = w.at("worker_id").get<std::uint32_t>();
      wr.triples_ingested = w.at("triples_ingested").get<std::uint64_t>();
      wr.wall_seconds = w.at("wall_seconds").get<double>();
      wr.updates_per_second = w.at("updates_per_second").get<std::uint64_t>();
      wr.cascade.updates_applied = w.at("updates_applied").get<std::uint64_t>();
      wr.cascade.cascades_per_level =
          w.at("cascades_per_level").get<std::vector<std::uint64_t>>();
      wr.cascade.entries_promoted_per_level =
          w.at("entries_promoted_per_level").get<std::vector<std::uint64_t>>();
      r.workers.push_back(std::move(wr));
    }
    r.aggregate_updates_per_second =
        j.at("aggregate_updates_per_second").get<std::uint64_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed bench report: ") + e.what());
  }
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "worker_id,triples_ingested,wall_seconds,updates_per_second,cascades\n";
  std::uint64_t total = 0;
  std::uint64_t total_cascades = 0;
  for (const auto& w : report.workers) {
    std::uint64_t cascades = 0;
    for (auto n : w.cascade.cascades_per_level) cascades += n;
    out << w.worker_id << ',' << w.triples_ingested << ',' << w.wall_seconds
        << ',' << w.updates_per_second << ',' << cascades << '\n';
    total += w.triples_ingested;
    total_cascades += cascades;
  }
  out << "aggregate," << total << ',' << report.wall_seconds << ','
      << report.aggregate_updates_per_second << ',' << total_cascades << '\n';
  return out.str();
}

void emit_report(const BenchReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  if (format == ReportFormat::json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_csv(report);
  }
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace hhm
