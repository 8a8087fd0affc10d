#include "hhm/bench.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "hhm/error.hpp"
#include "hhm/tsv.hpp"

namespace hhm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

struct WorkerTiming {
  Clock::time_point start;
  Clock::time_point end;
};

}  // namespace

std::string to_string(Mode m) {
  return m == Mode::hierarchical ? "hierarchical" : "flat";
}

Mode parse_mode(const std::string& s) {
  if (s == "hierarchical") return Mode::hierarchical;
  if (s == "flat") return Mode::flat;
  throw ConfigError("mode must be 'hierarchical' or 'flat', got '" + s + "'");
}

void BenchConfig::validate() const {
  stream.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (warmup_batches >= stream.num_batches) {
    throw ConfigError("warmup batches (" + std::to_string(warmup_batches) +
                      ") must be fewer than batches (" +
                      std::to_string(stream.num_batches) + ")");
  }
  if (workers > stream.num_batches - warmup_batches) {
    throw ConfigError("more workers (" + std::to_string(workers) +
                      ") than timed batches (" +
                      std::to_string(stream.num_batches - warmup_batches) + ")");
  }
}

std::vector<std::uint64_t> worker_batches(const BenchConfig& cfg,
                                          std::uint32_t worker, bool warmup) {
  const std::uint64_t first = warmup ? 0 : cfg.warmup_batches;
  const std::uint64_t last = warmup ? cfg.warmup_batches : cfg.stream.num_batches;
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = first + worker; k < last; k += cfg.workers) out.push_back(k);
  return out;
}

std::uint64_t updates_per_second(std::uint64_t triples, double seconds) {
  if (seconds <= 0.0) return 0;
  return static_cast<std::uint64_t>(static_cast<double>(triples) / seconds);
}

std::string rfc3339_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

BenchReport run_bench(const BenchConfig& cfg,
                      std::vector<HypersparseMatrix>* finals) {
  cfg.validate();
  const auto n = cfg.workers;
  const auto dim = cfg.stream.dimension();
  const auto cuts = cfg.effective_cuts();

  BenchReport report;
  report.config = cfg;
  report.workers.resize(n);
  std::vector<WorkerTiming> timing(n);
  std::vector<std::optional<HypersparseMatrix>> results(n);

  std::mutex error_mu;
  std::exception_ptr first_error;
  std::barrier start_line(static_cast<std::ptrdiff_t>(n));

  auto work = [&](std::uint32_t id) {
    bool arrived = false;
    try {
      HierarchicalMatrix matrix(dim, dim, cuts);
      const auto warm = worker_batches(cfg, id, /*warmup=*/true);
      const auto timed = worker_batches(cfg, id, /*warmup=*/false);

      std::vector<EdgeTriple> scratch;
      for (auto k : warm) {
        generate_batch_into(cfg.stream, k, scratch);
        matrix.update(scratch);
      }
      std::vector<std::vector<EdgeTriple>> pregenerated;
      if (cfg.pregen) {
        pregenerated.reserve(timed.size());
        for (auto k : timed) pregenerated.push_back(generate_batch(cfg.stream, k));
      }

      start_line.arrive_and_wait();
      arrived = true;
      const auto start = Clock::now();
      if (cfg.pregen) {
        for (const auto& batch : pregenerated) matrix.update(batch);
      } else {
        for (auto k : timed) {
          generate_batch_into(cfg.stream, k, scratch);
          matrix.update(scratch);
        }
      }
      const auto end = Clock::now();

      auto& r = report.workers[id];
      r.worker_id = id;
      r.triples_ingested = timed.size() * cfg.stream.batch_size;
      r.wall_seconds = seconds_between(start, end);
      r.updates_per_second = updates_per_second(r.triples_ingested, r.wall_seconds);
      r.cascade = matrix.stats();
      timing[id] = {start, end};
      if (finals) results[id] = matrix.flatten();
    } catch (...) {
      {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
      if (!arrived) start_line.arrive_and_drop();
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (std::uint32_t id = 0; id < n; ++id) threads.emplace_back(work, id);
  }
  if (first_error) std::rethrow_exception(first_error);

  auto start = timing.front().start;
  auto end = timing.front().end;
  std::uint64_t total = 0;
  for (std::uint32_t id = 0; id < n; ++id) {
    start = std::min(start, timing[id].start);
    end = std::max(end, timing[id].end);
    total += report.workers[id].triples_ingested;
  }
  report.wall_seconds = seconds_between(start, end);
  report.aggregate_updates_per_second = updates_per_second(total, report.wall_seconds);
  report.timestamp = rfc3339_now();

  if (finals) {
    finals->clear();
    for (auto& m : results) finals->push_back(std::move(*m));
  }
  return report;
}

std::string first_difference(const HypersparseMatrix& actual,
                             const HypersparseMatrix& expected) {
  if (actual.nrows() != expected.nrows() || actual.ncols() != expected.ncols()) {
    return "dimensions differ: " + std::to_string(actual.nrows()) + "x" +
           std::to_string(actual.ncols()) + " vs " +
           std::to_string(expected.nrows()) + "x" +
           std::to_string(expected.ncols());
  }
  const auto a = actual.extract_triples();
  const auto e = expected.extract_triples();
  auto key_less = [](const EdgeTriple& x, const EdgeTriple& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  };
  auto describe = [](const EdgeTriple& t, const char* got, const char* want) {
    return "(" + std::to_string(t.row) + ", " + std::to_string(t.col) +
           "): hierarchy=" + got + " oracle=" + want;
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < e.size()) {
    if (j == e.size() || (i < a.size() && key_less(a[i], e[j]))) {
      return describe(a[i], std::to_string(a[i].val).c_str(), "absent");
    }
    if (i == a.size() || key_less(e[j], a[i])) {
      return describe(e[j], "absent", std::to_string(e[j].val).c_str());
    }
    if (a[i].val != e[j].val) {
      return describe(a[i], std::to_string(a[i].val).c_str(),
                      std::to_string(e[j].val).c_str());
    }
    ++i;
    ++j;
  }
  return {};
}

VerifyResult run_verify(const VerifyConfig& cfg) {
  cfg.stream.validate();
  if (cfg.stream.total_triples() > VerifyConfig::kMaxTriples) {
    throw ConfigError("verify is limited to " +
                      std::to_string(VerifyConfig::kMaxTriples) +
                      " triples, config has " +
                      std::to_string(cfg.stream.total_triples()));
  }
  const auto dim = cfg.stream.dimension();
  HierarchicalMatrix hierarchy(dim, dim, cfg.cuts);
  HypersparseMatrix oracle(dim, dim);

  VerifyResult result;
  std::vector<EdgeTriple> batch;
  for (std::uint64_t k = 0; k < cfg.stream.num_batches; ++k) {
    generate_batch_into(cfg.stream, k, batch);
    hierarchy.update(batch);
    oracle.accumulate(batch);
    result.triples += batch.size();
    const auto nnz = hierarchy.layer_nnz();
    for (std::size_t i = 0; i + 1 < nnz.size(); ++i) {
      if (nnz[i] > cfg.cuts[i]) {
        result.diagnostic = "after batch " + std::to_string(k) + ": layer " +
                            std::to_string(i + 1) + " holds " +
                            std::to_string(nnz[i]) + " entries, cut is " +
                            std::to_string(cfg.cuts[i]);
        return result;
      }
    }
  }

  auto flat = hierarchy.flatten();
  if (cfg.inject_fault) {
    const auto first = batch.front();
    flat.accumulate(std::span(&first, 1));
  }
  result.cascades_per_level = hierarchy.stats().cascades_per_level;
  result.layer_nnz = hierarchy.layer_nnz();
  result.diagnostic = first_difference(flat, oracle);
  result.passed = result.diagnostic.empty();
  return result;
}

RankedSums top_k(const HypersparseMatrix::SumMap& sums, std::size_t k) {
  RankedSums all(sums.begin(), sums.end());
  auto better = [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  };
  const auto keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep),
                    all.end(), better);
  all.resize(keep);
  return all;
}

IngestSummary run_ingest(std::istream& in, const IngestConfig& cfg) {
  HierarchicalMatrix matrix(cfg.nrows, cfg.ncols, cfg.cuts);
  TsvReader reader(in, cfg.nrows, cfg.ncols);
  IngestSummary s;

  const auto start = Clock::now();
  std::vector<EdgeTriple> batch;
  while (reader.next_batch(batch, cfg.batch_size)) {
    matrix.update(batch);
    s.triples += batch.size();
  }
  const auto flat = matrix.flatten();
  s.wall_seconds = seconds_between(start, Clock::now());

  s.updates_per_second = updates_per_second(s.triples, s.wall_seconds);
  s.nnz = flat.nnz();
  s.value_sum = flat.value_sum();
  s.top_rows = top_k(flat.row_sums(), cfg.top_k);
  s.top_cols = top_k(flat.col_sums(), cfg.top_k);
  s.cascade = matrix.stats();
  return s;
}

IngestSummary run_ingest(const std::string& path, const IngestConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return run_ingest(in, cfg);
}

}  // namespace hhm
