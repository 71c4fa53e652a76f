#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reig/core/record.hpp"

namespace reig::cli {

inline constexpr const char* kRecordHeader =
    "model,design,estimator,robust_mode,epsilon,N1,N2,M,seed,value,lambda_star,clip_count,runtime_ms";

/// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double x);
double parse_real(const std::string& text);

void write_records(std::ostream& out, const std::vector<EstimateRecord>& records);
/// Throws std::runtime_error on a wrong header or a malformed row.
std::vector<EstimateRecord> read_records(std::istream& in);

/// Writes to `path`, or to `fallback` when path is empty or "-".
void write_records(const std::string& path, const std::vector<EstimateRecord>& records, std::ostream& fallback);

/// Generic table used by the figure and oracle-report commands.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_table(std::ostream& out, const Table& table);
void write_table(const std::string& path, const Table& table, std::ostream& fallback);

}  // namespace reig::cli
