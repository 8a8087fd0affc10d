#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hhm/cut_schedule.hpp"
#include "hhm/hypersparse_matrix.hpp"

namespace hhm {

/// Counters describing how much work the cascade has done.
struct CascadeStats {
  std::uint64_t updates_applied = 0;
  /// Entry i counts promotions out of layer i (the last entry stays 0).
  std::vector<std::uint64_t> cascades_per_level;
  /// Entry i counts stored entries moved out of layer i.
  std::vector<std::uint64_t> entries_promoted_per_level;

  friend bool operator==(const CascadeStats&, const CascadeStats&) = default;
};

/// N ordered hypersparse layers. Batches are added into the first (small,
/// cache-resident) layer; whenever layer i holds more than c_i entries it is
/// added into layer i+1 and cleared. The logical matrix is the sum of all
/// layers.
///
/// After every public call returns, nnz(layer i) <= c_i for all i < N.
/// Single writer; flatten() and stats() may run concurrently with each other.
template <AdditiveMonoid M = CheckedPlus>
class BasicHierarchicalMatrix {
 public:
  using matrix_type = BasicHypersparseMatrix<M>;
  using value_type = typename matrix_type::value_type;
  using triple_type = typename matrix_type::triple_type;

  // Largest table a cleared layer keeps allocated for reuse.
  static constexpr std::size_t kMaxRetained = std::size_t{1} << 17;

  BasicHierarchicalMatrix(Index nrows, Index ncols, CutSchedule cuts = {},
                          M monoid = {})
      : cuts_(std::move(cuts)), batch_(nrows, ncols, monoid) {
    layers_.reserve(cuts_.levels());
    for (std::size_t i = 0; i < cuts_.levels(); ++i) {
      auto& layer = layers_.emplace_back(nrows, ncols, monoid);
      if (i + 1 < cuts_.levels()) {
        layer.set_retained_capacity(
            std::min<std::uint64_t>(cuts_[i] + 1, kMaxRetained));
      }
    }
    stats_.cascades_per_level.assign(cuts_.levels(), 0);
    stats_.entries_promoted_per_level.assign(cuts_.levels(), 0);
  }

  Index nrows() const noexcept { return batch_.nrows(); }
  Index ncols() const noexcept { return batch_.ncols(); }
  std::size_t levels() const noexcept { return layers_.size(); }
  const CutSchedule& cuts() const noexcept { return cuts_; }
  const matrix_type& layer(std::size_t i) const { return layers_.at(i); }

  std::vector<std::uint64_t> layer_nnz() const {
    std::vector<std::uint64_t> out;
    out.reserve(layers_.size());
    for (const auto& l : layers_) out.push_back(l.nnz());
    return out;
  }

  /// Adds a batch of triples: duplicates within the batch are combined into
  /// a batch matrix, which is added to the first layer, then the cascade runs.
  /// An out-of-bounds triple rejects the whole batch with no state change.
  void update(std::span<const triple_type> batch) {
    if (batch.empty()) return;
    batch_.set_retained_capacity(std::min(batch.size(), kMaxRetained));
    batch_.clear();
    batch_.reserve(batch.size());
    batch_.accumulate(batch);
    if (layers_.front().empty()) {
      layers_.front().swap_entries(batch_);
    } else {
      layers_.front().add_assign(batch_);
    }
    stats_.updates_applied += batch.size();
    cascade();
  }

  /// Sum of all layers as a fresh matrix. Does not modify the hierarchy.
  matrix_type flatten() const {
    auto largest = std::max_element(
        layers_.begin(), layers_.end(),
        [](const auto& a, const auto& b) { return a.nnz() < b.nnz(); });
    matrix_type out = *largest;
    out.set_retained_capacity(0);
    for (auto it = layers_.begin(); it != layers_.end(); ++it) {
      if (it != largest && !it->empty()) out.add_assign(*it);
    }
    return out;
  }

  /// Folds every layer into the last one.
  void compact() {
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
      if (!layers_[i].empty()) promote(i, layers_.size() - 1);
    }
  }

  CascadeStats stats() const { return stats_; }

  /// True when every non-terminal layer is within its cut.
  bool quiescent() const noexcept {
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
      if (layers_[i].nnz() > cuts_[i]) return false;
    }
    return true;
  }

 private:
  void cascade() {
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
      if (layers_[i].nnz() > cuts_[i]) promote(i, i + 1);
    }
  }

  // Adds layer `from` into layer `to` and clears `from`. On overflow the
  // addition throws before anything changes, so no count is lost.
  void promote(std::size_t from, std::size_t to) {
    auto& src = layers_[from];
    auto& dst = layers_[to];
    const auto moved = src.nnz();
    if (dst.nnz() < moved) {
      // Merge the smaller table into the larger one; addition commutes.
      dst.swap_entries(src);
      if (!src.empty()) {
        try {
          dst.add_assign(src);
        } catch (...) {
          dst.swap_entries(src);
          throw;
        }
      }
    } else {
      dst.add_assign(src);
    }
    src.clear();
    ++stats_.cascades_per_level[from];
    stats_.entries_promoted_per_level[from] += moved;
  }

  CutSchedule cuts_;
  std::vector<matrix_type> layers_;
  matrix_type batch_;
  CascadeStats stats_;
};

using HierarchicalMatrix = BasicHierarchicalMatrix<CheckedPlus>;

}  // namespace hhm
