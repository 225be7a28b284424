#include "sil/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sil {

using nlohmann::json;

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw parse_error("format", "must be csv or json, got '" + std::string(s) + "'");
}

const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"primes",    "factor",   "pretend", "dirpoly", "sieve",
                                                 "intervals", "normform", "scan",    "gaps",    "bound"};
  return names;
}

namespace {

double number_of(const json& v, const std::string& path) {
  if (!v.is_number()) throw parse_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw parse_error(path, "expected a finite number");
  return d;
}

u64 uint_of(const json& v, const std::string& path, u64 lo, u64 hi) {
  if (v.is_number_unsigned()) {
    const u64 u = v.get<u64>();
    if (u < lo || u > hi) throw parse_error(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return u;
  }
  const double d = number_of(v, path);
  if (d != std::floor(d) || d < static_cast<double>(lo) || d > static_cast<double>(hi))
    throw parse_error(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<u64>(d);
}

std::string string_of(const json& v, const std::string& path) {
  if (!v.is_string()) throw parse_error(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> list_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw parse_error(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_of(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void dump_to(std::string& s, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) s += ",\n";
        first = false;
        s += pad + json(it.key()).dump() + ": ";
        dump_to(s, it.value(), indent + 2);
      }
      s += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      s += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ",\n";
        s += pad;
        dump_to(s, j[i], indent + 2);
      }
      s += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = j.get<double>();
      s += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      s += j.dump();
  }
}

std::string csv_cell(const json& c) {
  if (c.is_number_float()) return format_double(c.get<double>());
  if (c.is_string()) {
    const std::string v = c.get<std::string>();
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char ch : v) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (c.is_null()) return "";
  return c.dump();
}

}  // namespace

Plan parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw parse_error("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("", "config must be a JSON object");
  Plan p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    if (k == "experiment") {
      p.experiment = string_of(v, k);
      const auto& names = experiment_names();
      if (std::find(names.begin(), names.end(), p.experiment) == names.end())
        throw parse_error(k, "unknown experiment '" + p.experiment + "'");
    } else if (k == "function") {
      p.function = string_of(v, k);
    } else if (k == "X") {
      p.X = uint_of(v, k, 2, 1000000000);
    } else if (k == "h") {
      p.h = uint_of(v, k, 1, 1000000000);
    } else if (k == "gammas") {
      p.gammas = list_of(v, k);
    } else if (k == "stride") {
      p.stride = uint_of(v, k, 0, 1000000000);
    } else if (k == "seed") {
      p.seed = uint_of(v, k, 0, ~u64{0});
    } else if (k == "out") {
      p.out = string_of(v, k);
    } else if (k == "format") {
      p.format = parse_format(string_of(v, k));
    } else if (k == "deltas") {
      p.deltas = list_of(v, k);
    } else if (k == "params") {
      if (!v.is_object()) throw parse_error(k, "expected an object of numbers");
      for (auto pi = v.begin(); pi != v.end(); ++pi) p.params[pi.key()] = number_of(pi.value(), k + "." + pi.key());
    } else {
      throw parse_error(k, "unknown field");
    }
  }
  if (p.experiment.empty()) throw parse_error("experiment", "missing required field");
  return p;
}

Plan load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json plan_to_json(const Plan& p) {
  json j = json::object();
  j["experiment"] = p.experiment;
  j["function"] = p.function;
  j["X"] = p.X;
  j["h"] = p.h;
  j["gammas"] = p.gammas;
  j["stride"] = p.stride;
  j["seed"] = p.seed;
  j["out"] = p.out;
  if (p.format) j["format"] = to_string(*p.format);
  j["deltas"] = p.deltas;
  j["params"] = json::object();
  for (const auto& [k, v] : p.params) j["params"][k] = v;
  return j;
}

std::string plan_echo(const Plan& p) { return canonical_dump(plan_to_json(p)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string canonical_dump(const json& j) {
  std::string s;
  dump_to(s, j, 0);
  s += '\n';
  return s;
}

std::string render_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
  s += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) throw std::logic_error("render_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

json table_to_json(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[t.header[i]] = row[i];
    arr.push_back(std::move(o));
  }
  return arr;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw io_error("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open output '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw io_error("write failed for '" + path + "'");
}

Table scan_table(const ScanResult& r) {
  Table t{{"x", "short_re", "short_im", "main_re", "main_im", "disc"}, {}};
  for (const auto& row : r.rows)
    t.rows.push_back({row.x, row.short_avg.real(), row.short_avg.imag(), row.main_term.real(), row.main_term.imag(),
                      row.disc});
  return t;
}

json scan_json(const ScanResult& r) {
  json j;
  j["X"] = r.X;
  j["h"] = r.h;
  j["fn_name"] = r.fn_name;
  j["t_star"] = r.t_star;
  j["twisted"] = r.twisted;
  j["normalizer"] = r.normalizer;
  j["sample_stride"] = r.sample_stride;
  j["exceptional_fraction"] = json::object();
  for (const auto& [d, f] : r.exceptional_fraction) j["exceptional_fraction"][format_double(d)] = f;
  j["note"] = "exceptional sets are compared across h and delta; the asymptotic exponent is not tested";
  j["rows"] = table_to_json(scan_table(r));
  return j;
}

Table gap_table(const GapReport& r) {
  Table t{{"gamma", "moment_sum", "normalizer", "ratio"}, {}};
  for (std::size_t i = 0; i < r.gammas.size(); ++i)
    t.rows.push_back({r.gammas[i], r.moment_sums[i], r.normalizers[i], r.ratios[i]});
  return t;
}

json gap_json(const GapReport& r) {
  json j;
  j["set_name"] = r.set_name;
  j["X"] = r.X;
  j["member_count"] = r.member_count;
  j["first"] = r.first;
  j["last"] = r.last;
  j["density"] = r.density;
  for (const char* key : {"moment_sums", "normalizers", "ratios"}) j[key] = json::object();
  for (std::size_t i = 0; i < r.gammas.size(); ++i) {
    const std::string g = format_double(r.gammas[i]);
    j["moment_sums"][g] = r.moment_sums[i];
    j["normalizers"][g] = r.normalizers[i];
    j["ratios"][g] = r.ratios[i];
  }
  return j;
}

Table bound_table(const BoundReport& r) {
  Table t{{"bound_id", "param", "value", "lhs", "rhs", "ratio"}, {}};
  for (const auto& s : r.sweep) t.rows.push_back({r.bound_id, s.label, s.value, s.lhs, s.rhs, s.ratio});
  return t;
}

json bound_json(const BoundReport& r) {
  json j;
  j["bound_id"] = r.bound_id;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["sweep_spread"] = r.sweep_spread();
  j["sweep"] = table_to_json(bound_table(r));
  return j;
}

std::string render(const ScanResult& r, Format f) {
  return f == Format::csv ? render_csv(scan_table(r)) : canonical_dump(scan_json(r));
}
std::string render(const GapReport& r, Format f) {
  return f == Format::csv ? render_csv(gap_table(r)) : canonical_dump(gap_json(r));
}
std::string render(const BoundReport& r, Format f) {
  return f == Format::csv ? render_csv(bound_table(r)) : canonical_dump(bound_json(r));
}

void emit_report(const ScanResult& r, Format f, const std::string& path) { write_output(render(r, f), path); }
void emit_report(const GapReport& r, Format f, const std::string& path) { write_output(render(r, f), path); }
void emit_report(const BoundReport& r, Format f, const std::string& path) { write_output(render(r, f), path); }

}  // namespace sil
