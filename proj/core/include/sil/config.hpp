#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sil/arith.hpp"
#include "sil/lab.hpp"

namespace sil {

enum class Format { csv, json };

Format parse_format(std::string_view s);
const char* to_string(Format f);

// Validated experiment plan. Config files are JSON objects with the keys below;
// anything else is rejected with a parse_error naming the field.
struct Plan {
  std::string experiment;            // primes, factor, pretend, dirpoly, sieve, intervals, normform, scan, gaps, bound
  std::string function;              // function spec, field polynomial or bound id; empty for the command default
  u64 X = 1000000;
  u64 h = 100;
  std::vector<double> gammas{1.25};
  u64 stride = 0;                    // 0 picks the default sampling stride
  u64 seed = 0;
  std::string out;                   // empty or "-" for stdout
  std::optional<Format> format;     // unset: the command's natural format
  std::vector<double> deltas{0.1};
  std::map<std::string, double> params;  // command-specific numeric parameters
};

const std::vector<std::string>& experiment_names();

Plan parse_config(std::string_view text);
Plan load_config(const std::string& path);
nlohmann::json plan_to_json(const Plan& plan);
// canonical JSON echo of a plan; parse_config(plan_echo(p)) reproduces p
std::string plan_echo(const Plan& plan);

// %.12g
std::string format_double(double v);
// JSON with sorted keys, two-space indent, %.12g floats and a trailing LF
std::string canonical_dump(const nlohmann::json& j);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;  // scalar cells
};
std::string render_csv(const Table& t);
// a table as a JSON array of row objects
nlohmann::json table_to_json(const Table& t);

// writes text to path, or stdout for "" and "-"; io_error on failure
void write_output(const std::string& text, const std::string& path);

Table scan_table(const ScanResult& r);
nlohmann::json scan_json(const ScanResult& r);
Table gap_table(const GapReport& r);
nlohmann::json gap_json(const GapReport& r);
Table bound_table(const BoundReport& r);
nlohmann::json bound_json(const BoundReport& r);

std::string render(const ScanResult& r, Format f);
std::string render(const GapReport& r, Format f);
std::string render(const BoundReport& r, Format f);

void emit_report(const ScanResult& r, Format f, const std::string& path);
void emit_report(const GapReport& r, Format f, const std::string& path);
void emit_report(const BoundReport& r, Format f, const std::string& path);

}  // namespace sil
