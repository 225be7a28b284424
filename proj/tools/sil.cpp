#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sil/arith.hpp"
#include "sil/config.hpp"
#include "sil/dirpoly.hpp"
#include "sil/intervals.hpp"
#include "sil/lab.hpp"
#include "sil/normform.hpp"
#include "sil/pretence.hpp"
#include "sil/sieve.hpp"

namespace {

using nlohmann::json;
using sil::Format;
using sil::Plan;
using sil::u64;

// flags shared by every subcommand; unset flags leave the config value alone
struct Common {
  std::string config, out, format;
  std::optional<u64> X, h, stride, seed;
  std::optional<std::string> fn;
  std::vector<double> gammas, deltas;
  std::vector<std::string> params;  // key=value
};

void add_common(CLI::App* app, Common& c, bool with_fn = true) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--out", c.out, "output path (default stdout)");
  app->add_option("--format", c.format, "csv or json");
  app->add_option("--X", c.X, "scale X");
  app->add_option("--seed", c.seed, "seed");
  app->add_option("--param", c.params, "numeric parameter key=value (repeatable)");
  if (with_fn) app->add_option("--fn", c.fn, "function, e.g. moebius, two_squares, nit(5)");
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw sil::parse_error(what, "expected a number, got '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw sil::parse_error(what, "expected a number, got '" + s + "'");
  return v;
}

Plan make_plan(const std::string& experiment, const Common& c) {
  Plan p;
  if (!c.config.empty()) {
    p = sil::load_config(c.config);
    if (p.experiment != experiment)
      throw sil::parse_error("experiment", "config is for '" + p.experiment + "', not '" + experiment + "'");
  }
  p.experiment = experiment;
  if (!c.out.empty()) p.out = c.out;
  if (!c.format.empty()) p.format = sil::parse_format(c.format);
  if (c.X) {
    if (*c.X < 2) throw sil::parse_error("X", "must be >= 2");
    p.X = *c.X;
  }
  if (c.h) p.h = *c.h;
  if (c.stride) p.stride = *c.stride;
  if (c.seed) p.seed = *c.seed;
  if (c.fn) p.function = *c.fn;
  if (!c.gammas.empty()) p.gammas = c.gammas;
  if (!c.deltas.empty()) p.deltas = c.deltas;
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw sil::parse_error("param", "expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    p.params[key] = parse_number(kv.substr(eq + 1), "param." + key);
  }
  return p;
}

double param_or(const Plan& p, const std::string& key, double fallback) {
  const auto it = p.params.find(key);
  return it == p.params.end() ? fallback : it->second;
}

void reject_unknown_params(const Plan& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p.params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw sil::parse_error("params." + k, "unknown parameter for " + p.experiment);
  }
}

std::string fn_or(const Plan& p, const char* fallback) { return p.function.empty() ? fallback : p.function; }

// a flat record: JSON object, or a CSV header plus one row
void emit_record(const json& rec, const Plan& p) {
  const Format f = p.format.value_or(Format::json);
  if (f == Format::json) {
    sil::write_output(sil::canonical_dump(rec), p.out);
    return;
  }
  sil::Table t;
  std::vector<json> row;
  for (auto it = rec.begin(); it != rec.end(); ++it) {
    if (it.value().is_structured()) throw sil::parse_error("format", "csv is not available for this report");
    t.header.push_back(it.key());
    row.push_back(it.value());
  }
  t.rows.push_back(row);
  sil::write_output(sil::render_csv(t), p.out);
}

void emit_table(const sil::Table& t, const Plan& p) {
  const Format f = p.format.value_or(Format::csv);
  sil::write_output(f == Format::csv ? sil::render_csv(t) : sil::canonical_dump(sil::table_to_json(t)), p.out);
}

// ---------------------------------------------------------------------------

void run_primes(const Plan& p, std::optional<u64> limit) {
  reject_unknown_params(p, {});
  const u64 n = limit.value_or(p.X);
  const sil::PrimeTable t = sil::sieve_primes(n);
  std::string s;
  for (u64 q : t.primes()) s += std::to_string(q) + "\n";
  sil::write_output(s, p.out);
}

void run_factor(const Plan& p, u64 start, u64 len) {
  reject_unknown_params(p, {});
  if (start < 1) throw sil::parse_error("start", "must be >= 1");
  if (len < 1) throw sil::parse_error("len", "must be >= 1");
  sil::Table t{{"n", "factorization"}, {}};
  sil::for_each_factored(start, len, [&](u64 n, std::span<const sil::PrimePower> fac) {
    std::string f;
    for (const auto& pp : fac) f += (f.empty() ? "" : "*") + std::to_string(pp.p) + "^" + std::to_string(pp.e);
    t.rows.push_back({n, f.empty() ? std::string("1") : f});
  });
  emit_table(t, p);
}

void run_pretend(const Plan& p, const std::string& variant) {
  reject_unknown_params(p, {"t_max"});
  const sil::MultFn f = sil::parse_fn(fn_or(p, "moebius"));
  const sil::Variant v = sil::parse_variant(variant);
  const auto s = sil::minimize_pretend(f, p.X, v, param_or(p, "t_max", 0.0));
  const auto pr = sil::euler_products(f, p.X);
  json rec;
  rec["fn"] = f.name();
  rec["X"] = p.X;
  rec["variant"] = sil::to_string(v);
  rec["t_star"] = s.t_star;
  rec["M"] = s.M_value;
  rec["H"] = pr.H_value;
  rec["mean_factor"] = pr.mean_factor;
  rec["square_factor"] = pr.square_factor;
  emit_record(rec, p);
}

sil::DirPoly window_poly(const sil::MultFn& f, u64 lo, u64 len) {
  return sil::from_window(sil::range_values(f, lo, len), lo);
}

void run_mean_square(const Plan& p, double T, double sigma) {
  reject_unknown_params(p, {});
  if (!(T > 0.0)) throw sil::parse_error("T", "must be positive");
  const sil::MultFn f = sil::parse_fn(fn_or(p, "moebius"));
  // sum over X < n <= 2X
  const sil::DirPoly P = window_poly(f, p.X + 1, p.X);
  const double step = sil::nyquist_step(P);
  json rec;
  rec["fn"] = f.name();
  rec["X"] = p.X;
  rec["T"] = T;
  rec["sigma"] = sigma;
  rec["step"] = step;
  rec["value"] = sil::mean_square_grid(P, sigma, T, step);
  emit_record(rec, p);
}

void run_perron(const Plan& p, double x, double T) {
  reject_unknown_params(p, {});
  const sil::MultFn f = sil::parse_fn(fn_or(p, "moebius"));
  const double X = static_cast<double>(p.X), h = static_cast<double>(p.h);
  if (!(x >= X && x + h <= 2.0 * X)) throw sil::parse_error("x", "need X <= x and x + h <= 2X");
  if (x != std::floor(x)) throw sil::parse_error("x", "must be an integer");
  // F supported on (X/2, 4X], so T h >= X is enough
  const u64 lo = p.X / 2 + 1;
  const sil::DirPoly P = window_poly(f, lo, 4 * p.X - lo + 1);
  const double Tv = T > 0.0 ? T : 64.0 * X / h;
  // shifting by 1/2 keeps the integers x+1..x+h away from the jump points of the kernel
  const sil::cplx value = sil::perron_short_average(P, x + 0.5, h, Tv);
  sil::cplx direct = 0.0;
  const u64 xi = static_cast<u64>(x);
  for (u64 n = xi + 1; n <= xi + p.h; ++n) direct += P.coeff(n);
  direct /= h;
  json rec;
  rec["fn"] = f.name();
  rec["X"] = p.X;
  rec["x"] = x;
  rec["h"] = p.h;
  rec["T"] = Tv;
  rec["value"] = {value.real(), value.imag()};
  rec["direct"] = {direct.real(), direct.imag()};
  rec["abs_err"] = std::abs(value - direct);
  sil::write_output(sil::canonical_dump(rec), p.out);
}

sil::SievePlan sieve_plan(const Plan& p) { return sil::brun_hooley_plan(p.X, param_or(p, "tau", 3.0)); }

void run_sieve_check(const Plan& p, std::optional<u64> limit) {
  reject_unknown_params(p, {"tau"});
  const sil::MultFn g = sil::parse_fn(fn_or(p, "two_squares"));
  const auto plan = sieve_plan(p);
  const auto w = sil::lambda_weights(plan, g);
  const u64 N = limit.value_or(p.X);
  const auto ws = sil::weight_sum_report(w, g, p.X);
  json rec;
  rec["g"] = g.name();
  rec["X"] = p.X;
  rec["limit"] = N;
  rec["K"] = plan.K;
  rec["D_bound"] = w.D_bound;
  rec["violations"] = sil::majorant_violations(w, g, N);
  rec["s1"] = ws.s1;
  rec["b1"] = ws.b1;
  rec["s2"] = ws.s2;
  rec["b2"] = ws.b2;
  emit_record(rec, p);
}

void run_sieve_weights(const Plan& p) {
  reject_unknown_params(p, {"tau"});
  const sil::MultFn g = sil::parse_fn(fn_or(p, "two_squares"));
  const auto w = sil::lambda_weights(sieve_plan(p), g);
  sil::Table t{{"d", "lambda"}, {}};
  for (const auto& e : w.entries) t.rows.push_back({e.d, e.lambda});
  emit_table(t, p);
}

void run_intervals(Plan p, const std::string& params_file) {
  if (!params_file.empty()) {
    std::ifstream in(params_file);
    if (!in) throw sil::io_error("cannot open params file '" + params_file + "'");
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw sil::parse_error("params", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw sil::parse_error("params", "expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!it.value().is_number()) throw sil::parse_error("params." + it.key(), "expected a number");
      p.params.emplace(it.key(), it.value().get<double>());  // flags given with --param win
    }
  }
  reject_unknown_params(p, {"nu1", "nu2", "eta", "beta0", "P1", "Q1"});
  const auto sys = sil::build_system(p.X, param_or(p, "nu1", 0.1), param_or(p, "nu2", 0.15), param_or(p, "eta", 0.05),
                                     param_or(p, "beta0", 1.0), param_or(p, "P1", 1.5), param_or(p, "Q1", 3.0));
  json rec;
  rec["X"] = p.X;
  rec["J"] = sys.J;
  rec["params"] = {{"nu1", sys.params.nu1}, {"nu2", sys.params.nu2}, {"eta", sys.params.eta}, {"beta0", sys.params.beta0}};
  rec["pairs"] = json::array();
  for (const auto& pr : sys.pairs) rec["pairs"].push_back({{"P", pr.P}, {"Q", pr.Q}});
  rec["conditions"] = json::array();
  for (const auto& c : sys.report)
    rec["conditions"].push_back({{"name", c.name}, {"j", c.j}, {"pass", c.pass}, {"margin", c.margin}});
  rec["all_pass"] = sys.all_pass();
  const auto d = sil::system_density_report(sys, p.X);
  rec["density"] = {{"inS", d.inS}, {"complement_bound", d.complement_bound}, {"members", d.members}};
  if (p.format == Format::csv) throw sil::parse_error("format", "csv is not available for this report");
  sil::write_output(sil::canonical_dump(rec), p.out);
}

void run_normform_table(const Plan& p, u64 start, u64 len) {
  reject_unknown_params(p, {});
  if (start < 1 || len < 1) throw sil::parse_error("start", "need start >= 1 and len >= 1");
  const sil::NumberField K = sil::parse_field(fn_or(p, "x^2+5"));
  sil::Table t{{"n", "delta", "g"}, {}};
  sil::for_each_factored(start, len, [&](u64 n, std::span<const sil::PrimePower> fac) {
    t.rows.push_back({n, sil::ideal_norm_indicator(K, fac), sil::normform_indicator(K, fac)});
  });
  emit_table(t, p);
}

void run_normform_density(const Plan& p) {
  reject_unknown_params(p, {"w"});
  const sil::NumberField K = sil::parse_field(fn_or(p, "x^2+5"));
  const double w = param_or(p, "w", 100.0);
  json rec;
  rec["poly"] = K.name;
  rec["X"] = p.X;
  rec["w"] = w;
  rec["delta_K_X"] = sil::delta_K_X(K, p.X);
  rec["alpha_hat"] = sil::prime_normform_density(K, w, static_cast<double>(p.X)).second;
  emit_record(rec, p);
}

// "smooth_exact(theta)" is the raw (non-multiplicative) smooth-number predicate
std::optional<double> smooth_theta(const std::string& fn) {
  const std::string head = "smooth_exact(";
  if (fn.rfind(head, 0) != 0 || fn.back() != ')') return std::nullopt;
  return parse_number(fn.substr(head.size(), fn.size() - head.size() - 1), "function");
}

void run_gaps(const Plan& p) {
  reject_unknown_params(p, {});
  const std::string fn = fn_or(p, "two_squares");
  sil::GapReport r;
  if (const auto theta = smooth_theta(fn)) {
    const auto mask = sil::range_smooth_exact(p.X + 1, p.X, *theta);
    r = sil::run_gaps_mask(fn, mask, p.X, 1.0, p.gammas);
  } else {
    r = sil::run_gaps(sil::parse_fn(fn), p.X, p.gammas);
  }
  sil::emit_report(r, p.format.value_or(Format::json), p.out);
}

void run_scan(const Plan& p) {
  reject_unknown_params(p, {});
  const auto r = sil::run_scan(sil::parse_fn(fn_or(p, "moebius")), p.X, p.h, p.stride, p.deltas);
  sil::emit_report(r, p.format.value_or(Format::csv), p.out);
}

void run_bound(const Plan& p) {
  const std::string spec = fn_or(p, "grkoma");
  const auto colon = spec.find(':');
  const std::string id = spec.substr(0, colon);
  const std::string fn = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto r = sil::measure_bound(id, p.params, p.seed, fn);
  sil::emit_report(r, p.format.value_or(Format::json), p.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sil: multiplicative functions in short intervals workbench"};
  app.require_subcommand(1);

  Common c_primes, c_factor, c_pretend, c_ms, c_perron, c_check, c_weights, c_int, c_nf, c_nfd, c_scan, c_gaps, c_bound;
  std::optional<u64> limit, sieve_limit;
  u64 start = 1, len = 100, nf_start = 1, nf_len = 100;
  std::string variant = "dense", params_file, bound_id;
  double T_ms = 100.0, sigma = 1.0, perron_x = 0.0, perron_T = 0.0;

  auto* primes = app.add_subcommand("primes", "list primes up to a limit");
  add_common(primes, c_primes, false);
  primes->add_option("--limit", limit, "upper limit (default X)");

  auto* factor = app.add_subcommand("factor", "factorizations on a window");
  add_common(factor, c_factor, false);
  factor->add_option("--start", start, "first n")->check(CLI::PositiveNumber);
  factor->add_option("--len", len, "window length")->check(CLI::PositiveNumber);

  auto* pretend = app.add_subcommand("pretend", "pretentious distance minimum");
  add_common(pretend, c_pretend);
  pretend->add_option("--variant", variant, "dense or sparse");

  auto* dirpoly = app.add_subcommand("dirpoly", "Dirichlet polynomial tools");
  dirpoly->require_subcommand(1);
  auto* ms = dirpoly->add_subcommand("mean-square", "int_{-T}^{T} |F(sigma+it)|^2 dt for F over (X, 2X]");
  add_common(ms, c_ms);
  ms->add_option("--T", T_ms, "half range");
  ms->add_option("--sigma", sigma, "real part");
  auto* perron = dirpoly->add_subcommand("perron", "short average via Perron versus the direct sum");
  add_common(perron, c_perron);
  perron->set_help_flag("--help", "Print this help message and exit");  // --h is the window length
  perron->add_option("--h", c_perron.h, "window length");
  perron->add_option("--x", perron_x, "window start in [X, 2X - h]")->required();
  perron->add_option("--T", perron_T, "truncation (default 64X/h)");

  auto* sieve = app.add_subcommand("sieve", "Brun-Hooley majorant");
  sieve->require_subcommand(1);
  auto* check = sieve->add_subcommand("check", "majorant violations and coefficient sums");
  add_common(check, c_check, false);
  check->add_option("--g", c_check.fn, "function g");
  check->add_option("--limit", sieve_limit, "check n <= limit (default X)");
  auto* weights = sieve->add_subcommand("weights", "lambda_d as CSV d,lambda");
  add_common(weights, c_weights, false);
  weights->add_option("--g", c_weights.fn, "function g");

  auto* intervals = app.add_subcommand("intervals", "interval system and density report");
  add_common(intervals, c_int, false);
  intervals->add_option("--params", params_file, "JSON file with nu1, nu2, eta, beta0, P1, Q1");

  auto* normform = app.add_subcommand("normform", "ideal-norm and norm-form indicators");
  add_common(normform, c_nf, false);
  normform->add_option("--poly", c_nf.fn, "defining polynomial, e.g. x^2+5");
  normform->add_option("--start", nf_start, "first n")->check(CLI::PositiveNumber);
  normform->add_option("--len", nf_len, "window length")->check(CLI::PositiveNumber);
  auto* density = normform->add_subcommand("density", "delta_K(X) and the prime density of norm forms");
  add_common(density, c_nfd, false);
  density->add_option("--poly", c_nfd.fn, "defining polynomial");

  auto* scan = app.add_subcommand("scan", "short-interval discrepancy scan");
  add_common(scan, c_scan);
  scan->set_help_flag("--help", "Print this help message and exit");
  scan->add_option("--h", c_scan.h, "window length");
  scan->add_option("--stride", c_scan.stride, "x stride (0 = auto)");
  scan->add_option("--deltas", c_scan.deltas, "exceptional-set thresholds")->delimiter(',');

  auto* gaps = app.add_subcommand("gaps", "gap moments of a set in (X, 2X]");
  add_common(gaps, c_gaps);
  gaps->add_option("--gammas", c_gaps.gammas, "moment exponents in [1, 2)")->delimiter(',');

  auto* bound = app.add_subcommand("bound", "bound-ratio measurement with a parameter sweep");
  add_common(bound, c_bound);
  bound->add_option("--id", bound_id, "bound id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*primes) run_primes(make_plan("primes", c_primes), limit);
    else if (*factor) run_factor(make_plan("factor", c_factor), start, len);
    else if (*pretend) run_pretend(make_plan("pretend", c_pretend), variant);
    else if (*ms) run_mean_square(make_plan("dirpoly", c_ms), T_ms, sigma);
    else if (*perron) run_perron(make_plan("dirpoly", c_perron), perron_x, perron_T);
    else if (*check) run_sieve_check(make_plan("sieve", c_check), sieve_limit);
    else if (*weights) run_sieve_weights(make_plan("sieve", c_weights));
    else if (*intervals) run_intervals(make_plan("intervals", c_int), params_file);
    else if (*density) run_normform_density(make_plan("normform", c_nfd));
    else if (*normform) run_normform_table(make_plan("normform", c_nf), nf_start, nf_len);
    else if (*scan) run_scan(make_plan("scan", c_scan));
    else if (*gaps) run_gaps(make_plan("gaps", c_gaps));
    else if (*bound) {
      Plan p = make_plan("bound", c_bound);
      if (!bound_id.empty()) {
        const auto colon = p.function.find(':');
        const std::string fn = c_bound.fn ? *c_bound.fn : (colon == std::string::npos ? "" : p.function.substr(colon + 1));
        p.function = fn.empty() ? bound_id : bound_id + ":" + fn;
      } else if (c_bound.fn) {
        throw sil::parse_error("id", "--fn needs --id");
      }
      run_bound(p);
    }
  } catch (const sil::io_error& e) {
    std::cerr << "sil: " << e.what() << "\n";
    return 1;
  } catch (const sil::parse_error& e) {
    std::cerr << "sil: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {  // domain_error, out_of_range, invalid_argument, precondition_error
    std::cerr << "sil: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sil: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
