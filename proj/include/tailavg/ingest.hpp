#ifndef TAILAVG_INGEST_HPP
#define TAILAVG_INGEST_HPP

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailavg/errors.hpp"
#include "tailavg/report.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

struct IngestedSample {
  Sample sample;
  std::string digest;  // content hash of the values in file order
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !token.empty();
}

inline bool parse_index(std::string_view token, std::size_t& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !token.empty();
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

}  // namespace detail

// Reads newline-separated values, or a delimited file when a column is
// named (header row) or indexed (0-based; a non-numeric first row is
// treated as a header and skipped).
inline IngestedSample ingest(const std::string& path,
                             const std::optional<std::string>& column, bool take_abs) {
  std::ifstream in(path);
  if (!in) {
    throw error(errc::file_not_found, "ingest: cannot open " + path);
  }

  std::size_t column_index = 0;
  bool indexed = false;
  bool named = false;
  if (column) {
    indexed = detail::parse_index(detail::trim(*column), column_index);
    named = !indexed;
  }

  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool header_resolved = !named;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = detail::trim(line);
    if (trimmed.empty()) continue;

    if (!column) {
      double v;
      if (!detail::parse_double(trimmed, v)) {
        throw error(errc::parse_error,
                    "ingest: cannot parse value at line " + std::to_string(line_no), line_no);
      }
      values.push_back(v);
      continue;
    }

    const std::vector<std::string_view> fields = detail::split_fields(trimmed);
    if (!header_resolved) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (detail::trim(fields[i]) == detail::trim(*column)) {
          column_index = i;
          header_resolved = true;
          break;
        }
      }
      if (!header_resolved) {
        throw error(errc::parse_error,
                    "ingest: column '" + *column + "' not found in header at line " +
                        std::to_string(line_no),
                    line_no);
      }
      continue;
    }
    if (column_index >= fields.size()) {
      throw error(errc::parse_error,
                  "ingest: line " + std::to_string(line_no) + " has no column " +
                      std::to_string(column_index),
                  line_no);
    }
    double v;
    if (!detail::parse_double(detail::trim(fields[column_index]), v)) {
      if (indexed && first_data_row) {
        first_data_row = false;  // header row in an indexed file
        continue;
      }
      throw error(errc::parse_error,
                  "ingest: cannot parse value at line " + std::to_string(line_no), line_no);
    }
    first_data_row = false;
    values.push_back(v);
  }

  if (values.empty()) {
    throw error(errc::empty_input, "ingest: no values in " + path);
  }
  IngestedSample out{make_sample(values, take_abs), digest_values(values)};
  return out;
}

}  // namespace tailavg

#endif  // TAILAVG_INGEST_HPP
