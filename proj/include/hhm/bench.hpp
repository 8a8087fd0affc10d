#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "hhm/cut_schedule.hpp"
#include "hhm/hierarchical_matrix.hpp"
#include "hhm/streamgen.hpp"

namespace hhm {

enum class Mode { hierarchical, flat };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// The benchmark stream: the full workload shape cut down to 100 batches.
inline StreamConfig default_bench_stream() {
  StreamConfig s;
  s.num_batches = 100;
  return s;
}

struct BenchConfig {
  std::uint32_t workers = 1;
  StreamConfig stream = default_bench_stream();
  CutSchedule cuts = CutSchedule::defaults();
  Mode mode = Mode::hierarchical;
  std::uint64_t warmup_batches = 10;
  /// Generate every batch before the clock starts; otherwise batches are
  /// generated inside the timed loop.
  bool pregen = true;

  void validate() const;

  /// Cut schedule actually used by workers (empty in flat mode).
  CutSchedule effective_cuts() const {
    return mode == Mode::flat ? CutSchedule{} : cuts;
  }

  friend bool operator==(const BenchConfig&, const BenchConfig&) = default;
};

/// Batch indices handled by one worker. Warmup batches are indices below
/// warmup_batches; timed batches are the rest. Both ranges are dealt out
/// round-robin, so slices are disjoint and cover the stream.
std::vector<std::uint64_t> worker_batches(const BenchConfig& cfg,
                                          std::uint32_t worker, bool warmup);

struct WorkerResult {
  std::uint32_t worker_id = 0;
  std::uint64_t triples_ingested = 0;  // timed batches only
  double wall_seconds = 0.0;
  std::uint64_t updates_per_second = 0;
  CascadeStats cascade;

  friend bool operator==(const WorkerResult&, const WorkerResult&) = default;
};

struct BenchReport {
  BenchConfig config;
  std::vector<WorkerResult> workers;
  /// Sum of timed triples over the span from the first timed start to the
  /// last timed finish.
  std::uint64_t aggregate_updates_per_second = 0;
  double wall_seconds = 0.0;
  std::string timestamp;  // RFC 3339, UTC

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Integer updates/second, 0 when no time elapsed.
std::uint64_t updates_per_second(std::uint64_t triples, double seconds);

/// Current UTC time as RFC 3339.
std::string rfc3339_now();

/// Runs cfg.workers isolated workers, each ingesting its batch slice into a
/// private HierarchicalMatrix. If `finals` is non-null it receives each
/// worker's flattened matrix. The first worker error is rethrown after all
/// workers have joined.
BenchReport run_bench(const BenchConfig& cfg,
                      std::vector<HypersparseMatrix>* finals = nullptr);

struct VerifyConfig {
  StreamConfig stream = [] {
    StreamConfig s;
    s.batch_size = 10'000;
    s.num_batches = 50;
    return s;
  }();
  CutSchedule cuts = CutSchedule::defaults();
  /// Perturbs the hierarchy's result before comparison (negative control).
  bool inject_fault = false;

  static constexpr std::uint64_t kMaxTriples = 1'000'000;
};

struct VerifyResult {
  bool passed = false;
  std::uint64_t triples = 0;
  std::vector<std::uint64_t> cascades_per_level;
  std::vector<std::uint64_t> layer_nnz;
  std::string diagnostic;  // empty on success
};

/// Feeds one stream to a hierarchy and to a flat oracle, checking the
/// quiescent invariant after every batch and equality of the results.
VerifyResult run_verify(const VerifyConfig& cfg);

/// First key (in row, col order) where the two matrices disagree, rendered
/// for humans; empty when they are equal.
std::string first_difference(const HypersparseMatrix& actual,
                             const HypersparseMatrix& expected);

struct IngestConfig {
  CutSchedule cuts = CutSchedule::defaults();
  Index nrows = Index{1} << 32;
  Index ncols = Index{1} << 32;
  std::size_t batch_size = 100'000;
  std::size_t top_k = 10;
};

using RankedSums = std::vector<std::pair<Index, std::int64_t>>;

struct IngestSummary {
  std::uint64_t triples = 0;
  std::uint64_t nnz = 0;
  std::int64_t value_sum = 0;
  RankedSums top_rows;
  RankedSums top_cols;
  double wall_seconds = 0.0;
  std::uint64_t updates_per_second = 0;
  CascadeStats cascade;
};

/// The k largest sums, ties broken by smaller index.
RankedSums top_k(const HypersparseMatrix::SumMap& sums, std::size_t k);

IngestSummary run_ingest(std::istream& in, const IngestConfig& cfg);
IngestSummary run_ingest(const std::string& path, const IngestConfig& cfg);

}  // namespace hhm
