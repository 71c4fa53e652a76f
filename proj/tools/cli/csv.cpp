#include "csv.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace reig::cli {
namespace {

// Fields are plain identifiers and numbers; anything with a separator or quote
// gets RFC 4180 quoting.
std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote in CSV row");
  return fields;
}

std::uint64_t parse_unsigned(const std::string& text) {
  std::size_t used = 0;
  const auto v = std::stoull(text, &used);
  if (used != text.size() || text.front() == '-') throw std::runtime_error("bad integer '" + text + "'");
  return v;
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << quote(row[i]);
  }
  out << '\n';
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", x);
}

double parse_real(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::runtime_error("bad number '" + text + "'");
  return v;
}

void write_records(std::ostream& out, const std::vector<EstimateRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    write_row(out, {r.model, r.design, r.estimator, r.robust_mode, format_real(r.epsilon), std::to_string(r.n1),
                    std::to_string(r.n2), std::to_string(r.m), std::to_string(r.seed), format_real(r.value),
                    format_real(r.lambda_star), std::to_string(r.clip_count), format_real(r.runtime_ms)});
  }
}

std::vector<EstimateRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<EstimateRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_row(line);
    if (f.size() != 13) throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 13 fields");
    try {
      EstimateRecord r;
      r.model = f[0];
      r.design = f[1];
      r.estimator = f[2];
      r.robust_mode = f[3];
      r.epsilon = parse_real(f[4]);
      r.n1 = parse_unsigned(f[5]);
      r.n2 = parse_unsigned(f[6]);
      r.m = parse_unsigned(f[7]);
      r.seed = parse_unsigned(f[8]);
      r.value = parse_real(f[9]);
      r.lambda_star = parse_real(f[10]);
      r.clip_count = parse_unsigned(f[11]);
      r.runtime_ms = parse_real(f[12]);
      out.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_records(const std::string& path, const std::vector<EstimateRecord>& records, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    write_records(fallback, records);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  write_records(file, records);
}

void write_table(std::ostream& out, const Table& table) {
  write_row(out, table.header);
  for (const auto& row : table.rows) write_row(out, row);
}

void write_table(const std::string& path, const Table& table, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    write_table(fallback, table);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  write_table(file, table);
}

}  // namespace reig::cli
