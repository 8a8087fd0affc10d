#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hhm/hypersparse_matrix.hpp"

namespace hhm {

/// xorshift64* generator. Small, fast and identical on every platform, so
/// streams are reproducible from the seed alone.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) noexcept
      : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
  }

 private:
  std::uint64_t state_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of the PRNG substream for one batch:
/// mix64(seed XOR batch_index * 0x9E3779B97F4A7C15).
constexpr std::uint64_t batch_seed(std::uint64_t seed,
                                   std::uint64_t batch_index) noexcept {
  return mix64(seed ^ (batch_index * 0x9E3779B97F4A7C15ull));
}

/// R-MAT quadrant probabilities: a = top-left, b = top-right,
/// c = bottom-left, d = bottom-right.
struct Skew {
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;

  static Skew uniform() { return {0.25, 0.25, 0.25, 0.25}; }
  static Skew parse(const std::string& csv);

  friend bool operator==(const Skew&, const Skew&) = default;
};

enum class ValueMode { ones, random };

std::string to_string(ValueMode m);
ValueMode parse_value_mode(const std::string& s);

/// Parameters of a deterministic power-law edge stream. The defaults are
/// the full-size workload: 1,000 batches of 100,000 triples on a
/// 2^32 x 2^32 (IPv4-shaped) matrix.
struct StreamConfig {
  unsigned scale = 32;
  Skew skew{};
  std::uint64_t batch_size = 100'000;
  std::uint64_t num_batches = 1'000;
  std::uint64_t seed = 1;
  ValueMode value_mode = ValueMode::ones;

  /// Throws ConfigError if any parameter is out of range.
  void validate() const;

  std::uint64_t total_triples() const noexcept { return batch_size * num_batches; }
  /// Extent of each matrix dimension, 2^scale.
  Index dimension() const noexcept { return Index{1} << scale; }

  friend bool operator==(const StreamConfig&, const StreamConfig&) = default;
};

/// Values drawn in ValueMode::random are uniform in [1, kRandomValueMax].
inline constexpr std::int64_t kRandomValueMax = 1000;

/// Batch `batch_index` of the stream. The result depends only on the config
/// and the index, never on which other batches were generated.
std::vector<EdgeTriple> generate_batch(const StreamConfig& cfg,
                                       std::uint64_t batch_index);

/// As generate_batch, reusing `out`'s storage.
void generate_batch_into(const StreamConfig& cfg, std::uint64_t batch_index,
                         std::vector<EdgeTriple>& out);

/// Out-degree (triples per row) -> number of rows with that degree.
using DegreeHistogram = std::map<std::uint64_t, std::uint64_t>;

DegreeHistogram degree_histogram(std::span<const EdgeTriple> triples);

}  // namespace hhm
