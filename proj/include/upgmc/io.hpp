#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "upgmc/core.hpp"

namespace upgmc {

/// Input error carrying the 1-based line number of the offending line
/// (0 when no line applies, e.g. an unreadable file). The message already
/// contains "<name>:<line>: ...".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& name, std::size_t line, const std::string& what);

  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a points CSV: one point per row, d numeric columns. A header row is
/// auto-detected (first row with any non-numeric cell). Rows must agree on
/// arity and every value must be a finite decimal; violations throw
/// ParseError naming the line.
[[nodiscard]] std::vector<Point> read_points_csv(std::istream& in, const std::string& name = "<input>");

/// Same, from a file path. An unreadable file throws ParseError with line 0.
[[nodiscard]] std::vector<Point> read_points_file(const std::string& path);

/// Writes the linkage CSV: header `step,left,right,distance,new_id,new_size`,
/// one row per merge in step order, distances as shortest round-trip
/// decimals. Output is byte-deterministic for a given dendrogram.
void write_linkage_csv(std::ostream& out, const Dendrogram& dendrogram);

/// Parses a linkage CSV produced by write_linkage_csv back into the exact
/// MergeRecord sequence (distances recover bitwise). Structural violations
/// throw ParseError.
[[nodiscard]] Dendrogram read_linkage_csv(std::istream& in, const std::string& name = "<linkage>");

}  // namespace upgmc
