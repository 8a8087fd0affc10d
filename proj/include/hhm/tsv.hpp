#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhm/hypersparse_matrix.hpp"

namespace hhm {

// Edge-list text format: one "row<TAB>col<TAB>value\n" line per triple,
// decimal unsigned row/col, decimal signed value, no header.

void write_tsv(std::ostream& out, std::span<const EdgeTriple> triples);

/// Parses one line (without its newline). Throws ParseError naming
/// `line_no` if the line is malformed or the index is outside
/// nrows x ncols.
EdgeTriple parse_tsv_line(std::string_view line, std::uint64_t line_no,
                          Index nrows, Index ncols);

/// Reads an edge-list stream in fixed-size batches.
class TsvReader {
 public:
  TsvReader(std::istream& in, Index nrows, Index ncols)
      : in_(in), nrows_(nrows), ncols_(ncols) {}

  /// Replaces `out` with up to `max_triples` triples. Returns false once the
  /// input is exhausted and nothing was read.
  bool next_batch(std::vector<EdgeTriple>& out, std::size_t max_triples);

  std::uint64_t lines_read() const noexcept { return line_; }

 private:
  std::istream& in_;
  Index nrows_;
  Index ncols_;
  std::uint64_t line_ = 0;
  std::string buf_;
};

}  // namespace hhm
