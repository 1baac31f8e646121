#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace harvest::cli {

// Numeric result block: named columns, one vector per row, plus free-form
// note lines emitted as comments after the manifest.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
};

struct RunManifest {
  std::string command;
  // Insertion order is kept in every output.
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version;
  std::string timestamp;

  void add(std::string key, std::string value);
  void add(std::string key, double value);
  // FNV-1a 64 of the command and parameters, as 16 hex digits. The timestamp
  // is left out so that identical invocations share a hash.
  std::string settings_hash() const;
};

enum class Format { Table, Csv, Record };

// Shortest text that reads back to the same double (std::to_chars); "nan" for NaN.
std::string format_double(double value);
std::string iso_timestamp_utc();
std::uint64_t fnv1a64(std::string_view bytes);

// Comment-headed delimited text, an aligned human table, or a JSON record.
void write_output(std::ostream& out, const RunManifest& manifest, const Table& table, Format format);

// Reads what write_output produced with Format::Csv.
struct ParsedData {
  std::vector<std::string> header_lines;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
ParsedData read_delimited(std::istream& in);

}  // namespace harvest::cli
