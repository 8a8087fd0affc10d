#include "hhm/tsv.hpp"

#include <charconv>

#include "hhm/error.hpp"

namespace hhm {

void write_tsv(std::ostream& out, std::span<const EdgeTriple> triples) {
  // 20 digits per index, 20 digits + sign per value, two tabs, newline.
  constexpr std::size_t kMaxLine = 64;
  std::string buf;
  buf.reserve(kMaxLine * 4096);
  auto flush = [&] {
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    buf.clear();
  };
  char line[kMaxLine];
  char* const end = line + kMaxLine - 1;
  for (const auto& t : triples) {
    char* p = std::to_chars(line, end, t.row).ptr;
    *p++ = '\t';
    p = std::to_chars(p, end, t.col).ptr;
    *p++ = '\t';
    p = std::to_chars(p, end, t.val).ptr;
    *p++ = '\n';
    buf.append(line, p);
    if (buf.size() > kMaxLine * 4000) flush();
  }
  flush();
  if (!out) throw IoError("failed writing edge list");
}

namespace {

template <class T>
bool parse_field(std::string_view field, T& out) {
  if (field.empty()) return false;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && end == field.data() + field.size();
}

}  // namespace

EdgeTriple parse_tsv_line(std::string_view line, std::uint64_t line_no,
                          Index nrows, Index ncols) {
  const auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("line " + std::to_string(line_no) + ": " + why, line_no);
  };
  const auto tab1 = line.find('\t');
  const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
  if (tab2 == std::string_view::npos || line.find('\t', tab2 + 1) != std::string_view::npos) {
    throw fail("expected three tab-separated fields");
  }
  EdgeTriple t;
  if (!parse_field(line.substr(0, tab1), t.row)) throw fail("invalid row index");
  if (!parse_field(line.substr(tab1 + 1, tab2 - tab1 - 1), t.col)) {
    throw fail("invalid column index");
  }
  if (!parse_field(line.substr(tab2 + 1), t.val)) throw fail("invalid value");
  if (t.row >= nrows || t.col >= ncols) {
    throw fail("index (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
               ") out of range");
  }
  return t;
}

bool TsvReader::next_batch(std::vector<EdgeTriple>& out, std::size_t max_triples) {
  out.clear();
  while (out.size() < max_triples && std::getline(in_, buf_)) {
    ++line_;
    out.push_back(parse_tsv_line(buf_, line_, nrows_, ncols_));
  }
  if (in_.bad()) throw IoError("failed reading edge list");
  return !out.empty();
}

}  // namespace hhm
