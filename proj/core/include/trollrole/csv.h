#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace trollrole {

// Streaming RFC 4180 reader: quoted fields, doubled quotes, embedded line
// breaks, CRLF or LF endings. A UTF-8 byte-order mark on the first line is
// dropped. Lines starting with '#' between records are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws FormatError on an unterminated quoted field.
  bool next(std::vector<std::string>& fields);

  // 1-based line on which the most recently returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

// Maps header names to column positions. Header names are compared
// case-insensitively after trimming whitespace.
class CsvHeader {
 public:
  explicit CsvHeader(const std::vector<std::string>& names);

  // Position of `name`; throws FormatError naming the column when absent.
  std::size_t require(std::string_view name) const;
  // Position of `name` or npos.
  std::size_t find(std::string_view name) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> names_;
};

// Writes one record, quoting fields that contain separators, quotes or line
// breaks.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace trollrole
