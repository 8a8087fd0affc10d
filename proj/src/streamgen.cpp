#include "hhm/streamgen.hpp"

#include <absl/container/flat_hash_map.h>

#include <cmath>
#include <sstream>

#include "hhm/error.hpp"

namespace hhm {

namespace {

// Probability p mapped onto the full 64-bit range, saturating at 1.
std::uint64_t threshold(double p) {
  if (p >= 1.0) return ~std::uint64_t{0};
  if (p <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

}  // namespace

Skew Skew::parse(const std::string& csv) {
  std::istringstream in(csv);
  Skew s;
  double* fields[] = {&s.a, &s.b, &s.c, &s.d};
  for (std::size_t i = 0; i < 4; ++i) {
    std::string tok;
    if (!std::getline(in, tok, ',')) {
      throw ConfigError("skew needs four comma-separated values: '" + csv + "'");
    }
    try {
      std::size_t used = 0;
      *fields[i] = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw ConfigError("invalid skew value '" + tok + "'");
    }
  }
  std::string extra;
  if (std::getline(in, extra)) {
    throw ConfigError("skew needs exactly four values: '" + csv + "'");
  }
  return s;
}

std::string to_string(ValueMode m) {
  return m == ValueMode::ones ? "ones" : "random";
}

ValueMode parse_value_mode(const std::string& s) {
  if (s == "ones") return ValueMode::ones;
  if (s == "random") return ValueMode::random;
  throw ConfigError("value mode must be 'ones' or 'random', got '" + s + "'");
}

void StreamConfig::validate() const {
  if (scale < 1 || scale > 63) {
    throw ConfigError("scale must be in [1, 63], got " + std::to_string(scale));
  }
  const double probs[] = {skew.a, skew.b, skew.c, skew.d};
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("skew values must lie in [0, 1]");
  }
  if (std::abs(skew.a + skew.b + skew.c + skew.d - 1.0) > 1e-9) {
    throw ConfigError("skew values must sum to 1");
  }
  if (skew.a < skew.b || skew.a < skew.c || skew.a < skew.d) {
    throw ConfigError("skew 'a' must be the largest quadrant probability");
  }
  if (batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (num_batches < 1) throw ConfigError("batch count must be >= 1");
}

void generate_batch_into(const StreamConfig& cfg, std::uint64_t batch_index,
                         std::vector<EdgeTriple>& out) {
  cfg.validate();
  if (batch_index >= cfg.num_batches) {
    throw ConfigError("batch index " + std::to_string(batch_index) +
                      " >= batch count " + std::to_string(cfg.num_batches));
  }
  // A 64-bit draw below t_a picks quadrant a, below t_ab picks b, and so on.
  const std::uint64_t t_a = threshold(cfg.skew.a);
  const std::uint64_t t_ab = threshold(cfg.skew.a + cfg.skew.b);
  const std::uint64_t t_abc = threshold(cfg.skew.a + cfg.skew.b + cfg.skew.c);

  XorShift64Star rng(batch_seed(cfg.seed, batch_index));
  out.resize(cfg.batch_size);
  for (auto& t : out) {
    Index row = 0;
    Index col = 0;
    for (unsigned bit = 0; bit < cfg.scale; ++bit) {
      const std::uint64_t u = rng.next();
      row <<= 1;
      col <<= 1;
      if (u < t_a) {
      } else if (u < t_ab) {
        col |= 1;
      } else if (u < t_abc) {
        row |= 1;
      } else {
        row |= 1;
        col |= 1;
      }
    }
    t.row = row;
    t.col = col;
    t.val = cfg.value_mode == ValueMode::ones
                ? 1
                : static_cast<std::int64_t>(rng.next() % kRandomValueMax) + 1;
  }
}

std::vector<EdgeTriple> generate_batch(const StreamConfig& cfg,
                                       std::uint64_t batch_index) {
  std::vector<EdgeTriple> out;
  generate_batch_into(cfg, batch_index, out);
  return out;
}

DegreeHistogram degree_histogram(std::span<const EdgeTriple> triples) {
  absl::flat_hash_map<Index, std::uint64_t> degree;
  for (const auto& t : triples) ++degree[t.row];
  DegreeHistogram hist;
  for (const auto& [row, d] : degree) ++hist[d];
  return hist;
}

}  // namespace hhm
