#include "upgmc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "upgmc/csv.hpp"

namespace upgmc {

std::string format_double(double value) {
  char buffer[64];
  const std::to_chars_result result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_field(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string quoted;
  quoted.reserve(field.size() + 2);
  quoted.push_back('"');
  for (const char c : field) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
    ++i;
  }
  if (in_quotes) {
    throw std::invalid_argument("unterminated quoted field");
  }
  fields.push_back(std::move(current));
  return fields;
}

ParseError::ParseError(const std::string& name, std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? name + ": " + what
                                   : name + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_finite_double(std::string_view field, double& out) {
  const std::string_view text = trim(field);
  if (text.empty()) return false;
  const std::from_chars_result result = std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_uint(std::string_view field, std::uint64_t& out) {
  const std::string_view text = trim(field);
  if (text.empty()) return false;
  const std::from_chars_result result = std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

}  // namespace

std::vector<Point> read_points_csv(std::istream& in, const std::string& name) {
  std::vector<Point> points;
  std::string line;
  std::size_t line_number = 0;
  std::size_t arity = 0;
  bool first_row = true;

  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
      throw ParseError(name, line_number, "blank line");
    }

    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const std::invalid_argument& e) {
      throw ParseError(name, line_number, e.what());
    }

    Point row(fields.size());
    bool all_numeric = true;
    std::size_t bad_column = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!parse_finite_double(fields[i], row[i])) {
        all_numeric = false;
        bad_column = i + 1;
        break;
      }
    }

    if (first_row) {
      first_row = false;
      if (!all_numeric) continue;  // header row
      arity = row.size();
    } else if (!all_numeric) {
      throw ParseError(name, line_number,
                       "non-numeric or non-finite value in column " + std::to_string(bad_column));
    }

    if (arity == 0) {
      arity = row.size();  // first data row after a header
    } else if (row.size() != arity) {
      throw ParseError(name, line_number,
                       "expected " + std::to_string(arity) + " columns, got " +
                           std::to_string(row.size()));
    }
    points.push_back(std::move(row));
  }

  if (points.size() < 2) {
    throw ParseError(name, 0, "need at least 2 points, got " + std::to_string(points.size()));
  }
  return points;
}

std::vector<Point> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  return read_points_csv(in, path);
}

void write_linkage_csv(std::ostream& out, const Dendrogram& dendrogram) {
  out << "step,left,right,distance,new_id,new_size\n";
  for (const MergeRecord& r : dendrogram.records) {
    out << r.step << ',' << r.left << ',' << r.right << ',' << format_double(r.distance) << ','
        << r.new_id << ',' << r.new_size << '\n';
  }
}

Dendrogram read_linkage_csv(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_number = 0;

  if (!std::getline(in, line)) {
    throw ParseError(name, 0, "empty linkage file");
  }
  ++line_number;
  if (trim(line) != "step,left,right,distance,new_id,new_size") {
    throw ParseError(name, line_number, "unexpected linkage header");
  }

  Dendrogram dendrogram;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(name, line_number, "blank line");
    }
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 6) {
      throw ParseError(name, line_number, "expected 6 columns");
    }
    std::uint64_t step = 0, left = 0, right = 0, new_id = 0, new_size = 0;
    double distance = 0.0;
    if (!parse_uint(fields[0], step) || !parse_uint(fields[1], left) ||
        !parse_uint(fields[2], right) || !parse_finite_double(fields[3], distance) ||
        !parse_uint(fields[4], new_id) || !parse_uint(fields[5], new_size)) {
      throw ParseError(name, line_number, "malformed linkage row");
    }
    const std::uint32_t expected_step = static_cast<std::uint32_t>(dendrogram.records.size()) + 1;
    if (step != expected_step) {
      throw ParseError(name, line_number, "steps must ascend from 1");
    }
    if (left >= right) {
      throw ParseError(name, line_number, "left id must be less than right id");
    }
    dendrogram.records.push_back(MergeRecord{expected_step, static_cast<ClusterId>(left),
                                             static_cast<ClusterId>(right), distance,
                                             static_cast<ClusterId>(new_id),
                                             static_cast<std::uint32_t>(new_size)});
  }

  if (dendrogram.records.empty()) {
    throw ParseError(name, 0, "linkage file holds no merges");
  }
  dendrogram.n = static_cast<std::uint32_t>(dendrogram.records.size()) + 1;
  return dendrogram;
}

}  // namespace upgmc
