#include <charconv>
#include "output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace harvest::cli {

void RunManifest::add(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
}

void RunManifest::add(std::string key, double value) {
  parameters.emplace_back(std::move(key), format_double(value));
}

std::string RunManifest::settings_hash() const {
  std::string canonical = command + '\n';
  for (const auto& [key, value] : parameters) canonical += key + '=' + value + '\n';
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void write_header(std::ostream& out, const RunManifest& m, const Table& t) {
  out << "# harvest " << m.tool_version << '\n';
  out << "# command: " << m.command << '\n';
  out << "# timestamp: " << m.timestamp << '\n';
  out << "# settings_hash: " << m.settings_hash() << '\n';
  for (const auto& [key, value] : m.parameters) out << "# param " << key << " = " << value << '\n';
  for (const auto& note : t.notes) out << "# " << note << '\n';
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

void write_aligned(std::ostream& out, const Table& t) {
  if (t.rows.size() == 1) {
    std::size_t width = 0;
    for (const auto& c : t.columns) width = std::max(width, c.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width) + 2) << t.columns[c]
          << format_double(t.rows[0][c]) << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = std::max<std::size_t>(t.columns[c].size(), 24);
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << std::left << std::setw(static_cast<int>(width[c]) + 1) << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << std::left << std::setw(static_cast<int>(width[c]) + 1) << format_double(row[c]);
    out << '\n';
  }
}

void write_record(std::ostream& out, const RunManifest& m, const Table& t) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : m.parameters) params[key] = value;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json doc = {
      {"manifest",
       {{"command", m.command},
        {"parameters", params},
        {"tool_version", m.tool_version},
        {"timestamp", m.timestamp},
        {"settings_hash", m.settings_hash()}}},
      {"notes", t.notes},
      {"columns", t.columns},
      {"rows", rows},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace

void write_output(std::ostream& out, const RunManifest& manifest, const Table& table, Format format) {
  switch (format) {
    case Format::Csv:
      write_header(out, manifest, table);
      write_csv(out, table);
      break;
    case Format::Table:
      write_header(out, manifest, table);
      write_aligned(out, table);
      break;
    case Format::Record:
      write_record(out, manifest, table);
      break;
  }
}

ParsedData read_delimited(std::istream& in) {
  ParsedData data;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      data.header_lines.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!have_columns) {
      data.columns = std::move(fields);
      have_columns = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(std::strtod(f.c_str(), nullptr));
    if (row.size() != data.columns.size()) throw std::runtime_error("ragged row in data file");
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace harvest::cli
