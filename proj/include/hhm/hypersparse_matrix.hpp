#pragma once

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hhm/error.hpp"
#include "hhm/monoid.hpp"

namespace hhm {

using Index = std::uint64_t;

/// Largest supported dimension. A 2^64 extent does not fit in a 64-bit count,
/// so callers wanting the full IPv6 space pass this value instead.
inline constexpr Index kMaxDimension = ~Index{0};

/// One (row, col, value) update record.
template <class V>
struct BasicTriple {
  Index row = 0;
  Index col = 0;
  V val{};

  friend bool operator==(const BasicTriple&, const BasicTriple&) = default;
};

using EdgeTriple = BasicTriple<std::int64_t>;

namespace detail {

// Dimensions up to this bound let (row, col) share one 64-bit key.
inline constexpr Index kPackedExtent = Index{1} << 32;

struct WideKey {
  Index row;
  Index col;

  friend bool operator==(const WideKey&, const WideKey&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const WideKey& k) {
    return H::combine(std::move(h), k.row, k.col);
  }
};

}  // namespace detail

/// A single hypersparse layer: an unordered map from (row, col) to value over
/// an index space of up to (2^64-1) x (2^64-1). Storage is proportional to
/// the number of stored entries only.
///
/// Explicitly stored identity values count toward nnz(), as GraphBLAS nvals
/// does. Not thread-safe for concurrent mutation.
template <AdditiveMonoid M = CheckedPlus>
class BasicHypersparseMatrix {
 public:
  using monoid_type = M;
  using value_type = typename M::value_type;
  using triple_type = BasicTriple<value_type>;
  using SumMap = absl::flat_hash_map<Index, value_type>;

  BasicHypersparseMatrix(Index nrows, Index ncols, M monoid = {})
      : nrows_(nrows), ncols_(ncols), monoid_(monoid) {
    if (nrows == 0 || ncols == 0) {
      throw InvalidDimensionError("matrix dimensions must be >= 1, got " +
                                  std::to_string(nrows) + "x" +
                                  std::to_string(ncols));
    }
    if (nrows > detail::kPackedExtent || ncols > detail::kPackedExtent) {
      entries_.template emplace<WideMap>();
    }
  }

  /// Builds a matrix from triples, combining duplicate keys with the monoid.
  static BasicHypersparseMatrix build(Index nrows, Index ncols,
                                      std::span<const triple_type> triples,
                                      M monoid = {}) {
    BasicHypersparseMatrix out(nrows, ncols, monoid);
    out.reserve(triples.size());
    out.accumulate(triples);
    return out;
  }

  Index nrows() const noexcept { return nrows_; }
  Index ncols() const noexcept { return ncols_; }
  const M& monoid() const noexcept { return monoid_; }

  /// True when (row, col) is packed into a single 64-bit key.
  bool packed_keys() const noexcept {
    return std::holds_alternative<PackedMap>(entries_);
  }

  std::uint64_t nnz() const noexcept {
    return std::visit([](const auto& m) { return std::uint64_t(m.size()); },
                      entries_);
  }

  bool empty() const noexcept { return nnz() == 0; }

  std::optional<value_type> get(Index row, Index col) const {
    if (row >= nrows_ || col >= ncols_) return std::nullopt;
    return std::visit(
        [&](const auto& m) -> std::optional<value_type> {
          using Map = std::decay_t<decltype(m)>;
          auto it = m.find(key_of<Map>(row, col));
          if (it == m.end()) return std::nullopt;
          return it->second;
        },
        entries_);
  }

  /// Folds triples into this matrix. All bounds are validated before any
  /// entry is touched; an overflow mid-way leaves earlier triples applied.
  void accumulate(std::span<const triple_type> triples) {
    check_bounds(triples);
    if constexpr (kTracksMagnitude) {
      for (const auto& t : triples) {
        magnitude_bound_ = saturating_add(magnitude_bound_, magnitude(t.val));
      }
    }
    std::visit(
        [&](auto& m) {
          using Map = std::decay_t<decltype(m)>;
          for (const auto& t : triples) {
            auto [it, inserted] = m.try_emplace(key_of<Map>(t.row, t.col), t.val);
            if (!inserted && !monoid_.combine_into(it->second, t.val)) {
              throw OverflowError(overflow_message(t.row, t.col));
            }
          }
        },
        entries_);
  }

  /// this = this + other (key-union merge). Either fully applied or, on
  /// overflow, throws with this matrix unchanged.
  void add_assign(const BasicHypersparseMatrix& other) {
    check_same_shape(other);
    std::visit(
        [&](auto& mine, const auto& theirs) {
          using Mine = std::decay_t<decltype(mine)>;
          using Theirs = std::decay_t<decltype(theirs)>;
          if constexpr (std::is_same_v<Mine, Theirs>) {
            merge_into(mine, theirs, may_overflow_with(other));
          }
        },
        entries_, other.entries_);
    if constexpr (kTracksMagnitude) {
      magnitude_bound_ = saturating_add(magnitude_bound_, other.magnitude_bound_);
    }
  }

  /// Drops every entry. Dimensions are preserved; storage is released except
  /// for up to retained_capacity() slots kept for the next fill.
  void clear() {
    std::visit(
        [&](auto& m) {
          using Map = std::decay_t<decltype(m)>;
          magnitude_bound_ = 0;
          if (m.empty()) return;
          const auto keep = std::min<std::size_t>(m.size(), retained_capacity_);
          Map fresh;
          if (keep > 0) fresh.reserve(keep);
          m = std::move(fresh);
        },
        entries_);
  }

  std::size_t retained_capacity() const noexcept { return retained_capacity_; }
  void set_retained_capacity(std::size_t n) noexcept { retained_capacity_ = n; }

  void reserve(std::size_t n) {
    std::visit([&](auto& m) { m.reserve(n); }, entries_);
  }

  /// Exchanges stored entries with a same-shaped matrix in O(1).
  void swap_entries(BasicHypersparseMatrix& other) {
    check_same_shape(other);
    entries_.swap(other.entries_);
    std::swap(magnitude_bound_, other.magnitude_bound_);
  }

  /// Calls f(row, col, value) for each stored entry in unspecified order.
  template <class F>
  void for_each(F&& f) const {
    std::visit(
        [&](const auto& m) {
          for (const auto& [k, v] : m) {
            const auto [r, c] = unkey(k);
            f(r, c, v);
          }
        },
        entries_);
  }

  /// All stored entries in strictly increasing (row, col) order.
  std::vector<triple_type> extract_triples() const {
    std::vector<triple_type> out;
    out.reserve(nnz());
    for_each([&](Index r, Index c, const value_type& v) {
      out.push_back({r, c, v});
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
  }

  SumMap row_sums() const { return axis_sums(/*by_row=*/true); }
  SumMap col_sums() const { return axis_sums(/*by_row=*/false); }

  /// Monoid fold of every stored value.
  value_type value_sum() const {
    value_type acc = monoid_.identity();
    for_each([&](Index r, Index c, const value_type& v) {
      if (!monoid_.combine_into(acc, v)) {
        throw OverflowError(overflow_message(r, c));
      }
    });
    return acc;
  }

  bool equals(const BasicHypersparseMatrix& other) const {
    return nrows_ == other.nrows_ && ncols_ == other.ncols_ &&
           entries_ == other.entries_;
  }

  friend bool operator==(const BasicHypersparseMatrix& a,
                         const BasicHypersparseMatrix& b) {
    return a.equals(b);
  }

 private:
  using PackedMap = absl::flat_hash_map<std::uint64_t, value_type>;
  using WideMap = absl::flat_hash_map<detail::WideKey, value_type>;

  template <class Map>
  static auto key_of(Index row, Index col) noexcept {
    if constexpr (std::is_same_v<Map, PackedMap>) {
      return (row << 32) | col;
    } else {
      return detail::WideKey{row, col};
    }
  }

  static std::pair<Index, Index> unkey(std::uint64_t k) noexcept {
    return {k >> 32, k & 0xffffffffu};
  }
  static std::pair<Index, Index> unkey(const detail::WideKey& k) noexcept {
    return {k.row, k.col};
  }

  static std::string overflow_message(Index row, Index col) {
    return "value overflow combining entry (" + std::to_string(row) + ", " +
           std::to_string(col) + ")";
  }

  void check_bounds(std::span<const triple_type> triples) const {
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto& t = triples[i];
      if (t.row >= nrows_ || t.col >= ncols_) {
        throw IndexError("triple " + std::to_string(i) + " (" +
                             std::to_string(t.row) + ", " +
                             std::to_string(t.col) + ") out of bounds for " +
                             std::to_string(nrows_) + "x" +
                             std::to_string(ncols_) + " matrix",
                         i);
      }
    }
  }

  void check_same_shape(const BasicHypersparseMatrix& other) const {
    if (nrows_ != other.nrows_ || ncols_ != other.ncols_) {
      throw DimensionMismatchError(
          "dimension mismatch: " + std::to_string(nrows_) + "x" +
          std::to_string(ncols_) + " vs " + std::to_string(other.nrows_) +
          "x" + std::to_string(other.ncols_));
    }
  }

  // Integral checked values carry an upper bound on |value| over all stored
  // entries, so merges that provably cannot overflow skip the pre-check.
  static constexpr bool kTracksMagnitude =
      M::can_fail && std::is_integral_v<value_type>;

  static std::uint64_t magnitude(value_type v) noexcept {
    if constexpr (std::is_signed_v<value_type>) {
      return v < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(v)
                   : static_cast<std::uint64_t>(v);
    } else {
      return static_cast<std::uint64_t>(v);
    }
  }

  static std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r;
    return __builtin_add_overflow(a, b, &r) ? ~std::uint64_t{0} : r;
  }

  bool may_overflow_with(const BasicHypersparseMatrix& other) const noexcept {
    if constexpr (!M::can_fail) {
      return false;
    } else if constexpr (kTracksMagnitude) {
      return saturating_add(magnitude_bound_, other.magnitude_bound_) >
             static_cast<std::uint64_t>(std::numeric_limits<value_type>::max());
    } else {
      return true;
    }
  }

  template <class Map>
  void merge_into(Map& mine, const Map& theirs, bool precheck) {
    if (precheck) {
      for (const auto& [k, v] : theirs) {
        auto it = mine.find(k);
        if (it == mine.end()) continue;
        value_type probe = it->second;
        if (!monoid_.combine_into(probe, v)) {
          const auto [r, c] = unkey(k);
          throw OverflowError(overflow_message(r, c));
        }
      }
    }
    if (&mine == &theirs) {
      for (auto& [k, v] : mine) monoid_.combine_into(v, value_type(v));
      return;
    }
    mine.reserve(mine.size() + theirs.size());
    for (const auto& [k, v] : theirs) {
      auto [it, inserted] = mine.try_emplace(k, v);
      if (!inserted) monoid_.combine_into(it->second, v);
    }
  }

  SumMap axis_sums(bool by_row) const {
    SumMap out;
    for_each([&](Index r, Index c, const value_type& v) {
      auto [it, inserted] = out.try_emplace(by_row ? r : c, v);
      if (!inserted && !monoid_.combine_into(it->second, v)) {
        throw OverflowError("value overflow summing " +
                            std::string(by_row ? "row " : "col ") +
                            std::to_string(by_row ? r : c));
      }
    });
    return out;
  }

  Index nrows_;
  Index ncols_;
  M monoid_;
  std::size_t retained_capacity_ = 0;
  std::uint64_t magnitude_bound_ = 0;
  std::variant<PackedMap, WideMap> entries_;
};

using HypersparseMatrix = BasicHypersparseMatrix<CheckedPlus>;

/// Key-union sum of two same-shaped matrices; inputs are left unmodified.
template <AdditiveMonoid M>
BasicHypersparseMatrix<M> ewise_add(const BasicHypersparseMatrix<M>& a,
                                    const BasicHypersparseMatrix<M>& b) {
  const bool a_larger = a.nnz() >= b.nnz();
  BasicHypersparseMatrix<M> out = a_larger ? a : b;
  out.add_assign(a_larger ? b : a);
  return out;
}

}  // namespace hhm
