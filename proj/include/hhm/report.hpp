#pragma once

#include "json.hpp"

#include <string>

#include "hhm/bench.hpp"

namespace hhm {

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& s);

nlohmann::ordered_json to_json(const BenchReport& report);
BenchReport bench_report_from_json(const nlohmann::json& j);

/// Header, one row per worker, then an "aggregate" row.
std::string to_csv(const BenchReport& report);

/// Writes the report to `path`; throws IoError if it cannot be written.
void emit_report(const BenchReport& report, ReportFormat format,
                 const std::string& path);

}  // namespace hhm
