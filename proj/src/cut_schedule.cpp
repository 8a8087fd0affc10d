#include "hhm/cut_schedule.hpp"

#include <charconv>

#include "hhm/error.hpp"

namespace hhm {

CutSchedule::CutSchedule(std::vector<std::uint64_t> cuts)
    : cuts_(std::move(cuts)) {
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (cuts_[i] == 0) {
      throw ConfigError("cut " + std::to_string(i + 1) + " must be positive");
    }
    if (i > 0 && cuts_[i] <= cuts_[i - 1]) {
      throw ConfigError("cuts must be strictly increasing: " +
                        std::to_string(cuts_[i - 1]) + " then " +
                        std::to_string(cuts_[i]));
    }
  }
}

CutSchedule CutSchedule::defaults() {
  return CutSchedule({1u << 15, 1u << 19, 1u << 23});
}

CutSchedule CutSchedule::parse(std::string_view csv) {
  std::vector<std::uint64_t> cuts;
  if (csv.empty()) return CutSchedule();
  std::size_t pos = 0;
  while (true) {
    const auto comma = csv.find(',', pos);
    const auto field = csv.substr(pos, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - pos);
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
      throw ConfigError("invalid cut value '" + std::string(field) + "'");
    }
    cuts.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return CutSchedule(std::move(cuts));
}

std::string CutSchedule::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cuts_[i]);
  }
  return out;
}

}  // namespace hhm
