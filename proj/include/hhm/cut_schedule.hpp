#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhm {

/// Thresholds c_1 .. c_{N-1} for an N-level hierarchy. Layer i cascades into
/// layer i+1 once it holds more than c_i entries; the last layer has no cut.
/// Cuts are positive and strictly increasing. An empty schedule is a single
/// flat layer.
class CutSchedule {
 public:
  CutSchedule() = default;
  explicit CutSchedule(std::vector<std::uint64_t> cuts);

  /// Four levels: [2^15, 2^19, 2^23].
  static CutSchedule defaults();

  /// Parses "c1,c2,..."; the empty string yields a single-level schedule.
  static CutSchedule parse(std::string_view csv);

  std::span<const std::uint64_t> cuts() const noexcept { return cuts_; }
  std::size_t levels() const noexcept { return cuts_.size() + 1; }
  std::uint64_t operator[](std::size_t i) const { return cuts_.at(i); }

  std::string to_string() const;

  friend bool operator==(const CutSchedule&, const CutSchedule&) = default;

 private:
  std::vector<std::uint64_t> cuts_;
};

}  // namespace hhm
