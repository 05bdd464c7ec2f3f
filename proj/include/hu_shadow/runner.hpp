#pragma once

/// \file
/// Scenario files and the four commands behind the hu-shadow tool.
///
/// A scenario is a JSON object; every optional field has an explicit default
/// after loading and to_json writes all of them back, so a loaded scenario
/// round-trips. Outputs are written to a temporary file and renamed into
/// place. Floating-point CSV fields use 17 significant digits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hu_shadow/claims.hpp"
#include "hu_shadow/core_systems.hpp"
#include "hu_shadow/error.hpp"
#include "hu_shadow/growth_analysis.hpp"
#include "hu_shadow/instability.hpp"
#include "hu_shadow/shadowing.hpp"

namespace hu_shadow::runner {

using nlohmann::json;

struct AnalysisConfig {
  std::size_t window = 32;
  double tol = 1e-4;
  std::size_t max_period = 8;
  std::size_t horizon = 1000;  ///< profile length used for classification
};

struct ShadowConfig {
  double tol = 1e-12;
  std::size_t max_iter = 100;
  double tail_fraction = 1e-3;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};

  [[nodiscard]] bool wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }
};

struct Scenario {
  MapSystem system;
  Complex a1{1.0, 0.0};
  double epsilon = 0.0;
  ResidualPolicy residual;
  std::size_t horizon = 0;
  AnalysisConfig analysis;
  ShadowConfig shadow;
  OutputConfig output;
};

enum class Command { Analyze, Shadow, Instability, Reproduce };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// Formatting and atomic output
// ---------------------------------------------------------------------------

inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Writes to `<path>.tmp` and renames over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// NaN and infinities are not JSON numbers; they become null.
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

namespace detail {

inline void reject_unknown(const json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(where + key + ": unknown key");
  }
}

inline const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field + ": expected an object");
  return j;
}

inline double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + ": must be finite");
  return v;
}

inline std::int64_t get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::size_t get_count(const json& j, const std::string& field, std::size_t min) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < static_cast<std::int64_t>(min))
    throw ConfigError(field + ": expected an integer >= " + std::to_string(min));
  return j.get<std::size_t>();
}

inline Ratio parse_ratio(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Ratio{j.get<std::int64_t>(), 1};
  if (j.is_number()) {
    const auto r = ratio_from_double(get_number(j, field));
    if (!r) throw ConfigError(field + ": not representable as a 64-bit ratio");
    return *r;
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const auto v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return Ratio{v, 1};
      }
      const std::string ns = s.substr(0, slash);
      const std::string ds = s.substr(slash + 1);
      const auto n = std::stoll(ns, &used);
      if (used != ns.size()) throw std::invalid_argument(s);
      const auto d = std::stoll(ds, &used);
      if (used != ds.size()) throw std::invalid_argument(s);
      if (d == 0) throw ConfigError(field + ": zero denominator");
      return d < 0 ? Ratio{-n, -d} : Ratio{n, d};
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(field + ": expected \"p/q\", got \"" + s + "\"");
    }
  }
  throw ConfigError(field + ": expected a number or \"p/q\" string");
}

inline json ratio_json(const Ratio& r) {
  if (r.den == 1) return r.num;
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline RateKind parse_rate_kind(const json& j, const std::string& field) {
  if (j == "contracting") return RateKind::ContractingBound;
  if (j == "expanding") return RateKind::ExpandingBound;
  throw ConfigError(field + ": expected \"contracting\" or \"expanding\"");
}

inline MapSystem parse_system(const json& j) {
  require_object(j, "system");
  if (!j.contains("family") || !j["family"].is_string())
    throw ConfigError("system.family: required string");
  const auto fam = j["family"].get<std::string>();
  MapSystem sys;
  if (fam == "periodic_linear") {
    reject_unknown(j, "system.", {"family", "coeffs", "rate_kind"});
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
      throw ConfigError("system.coeffs: required non-empty array");
    PeriodicLinearParams p;
    for (std::size_t i = 0; i < j["coeffs"].size(); ++i) {
      const std::string field = "system.coeffs[" + std::to_string(i) + "]";
      const Ratio r = parse_ratio(j["coeffs"][i], field);
      if (r.num == 0) throw ConfigError(field + ": growth rate must be positive");
      p.coeffs.push_back(r);
    }
    sys = MapSystem{p, RateKind::ContractingBound, DomainKind::ComplexPlane};
  } else if (fam == "index_scaled_linear") {
    reject_unknown(j, "system.", {"family", "odd_factor", "even_factor", "rate_kind"});
    IndexScaledLinearParams p;
    if (j.contains("odd_factor")) p.odd_factor = get_int(j["odd_factor"], "system.odd_factor");
    if (j.contains("even_factor")) p.even_factor = get_int(j["even_factor"], "system.even_factor");
    if (p.odd_factor <= 0) throw ConfigError("system.odd_factor: growth rate must be positive");
    if (p.even_factor <= 0) throw ConfigError("system.even_factor: growth rate must be positive");
    sys = MapSystem{p, RateKind::ExpandingBound, DomainKind::ComplexPlane};
  } else if (fam == "power_two_parity") {
    reject_unknown(j, "system.", {"family", "odd_shift", "even_shift", "rate_kind"});
    PowerTwoParityParams p;
    if (j.contains("odd_shift")) p.odd_shift = get_int(j["odd_shift"], "system.odd_shift");
    if (j.contains("even_shift")) p.even_shift = get_int(j["even_shift"], "system.even_shift");
    sys = MapSystem{p, RateKind::ContractingBound, DomainKind::ComplexPlane};
  } else if (fam == "affine_sinusoid") {
    reject_unknown(j, "system.", {"family", "linear", "rate_kind"});
    AffineSinusoidParams p;
    if (j.contains("linear")) p.linear = get_number(j["linear"], "system.linear");
    if (!(p.linear > 1.0)) throw ConfigError("system.linear: must exceed 1");
    sys = MapSystem{p, RateKind::ExpandingBound, DomainKind::RealLine};
  } else {
    throw ConfigError("system.family: unknown family \"" + fam + "\"");
  }
  if (j.contains("rate_kind")) sys.rate_kind = parse_rate_kind(j["rate_kind"], "system.rate_kind");
  try {
    validate(sys);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  return sys;
}

inline json system_json(const MapSystem& sys) {
  json j;
  j["family"] = family_name(sys.family());
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PeriodicLinearParams>) {
          j["coeffs"] = json::array();
          for (const auto& c : p.coeffs) j["coeffs"].push_back(ratio_json(c));
        } else if constexpr (std::is_same_v<P, IndexScaledLinearParams>) {
          j["odd_factor"] = p.odd_factor;
          j["even_factor"] = p.even_factor;
        } else if constexpr (std::is_same_v<P, PowerTwoParityParams>) {
          j["odd_shift"] = p.odd_shift;
          j["even_shift"] = p.even_shift;
        } else {
          j["linear"] = p.linear;
        }
      },
      sys.params);
  j["rate_kind"] = rate_kind_name(sys.rate_kind);
  return j;
}

inline ResidualKind parse_residual_kind(const json& j) {
  for (auto k : {ResidualKind::ConstantReal, ResidualKind::ConstantPhase,
                 ResidualKind::LowDiscrepancyPhase, ResidualKind::Zero})
    if (j == residual_kind_name(k)) return k;
  throw ConfigError(
      "residual.kind: expected constant_real, constant_phase, low_discrepancy_phase or zero");
}

// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline Scenario scenario_from_json(const json& j) {
  using namespace detail;
  require_object(j, "scenario");
  reject_unknown(j, "", {"system", "a1", "epsilon", "residual", "horizon", "analysis", "shadow", "output"});
  for (const char* req : {"system", "epsilon", "horizon"})
    if (!j.contains(req)) throw ConfigError(std::string(req) + ": required");

  Scenario s;
  s.system = parse_system(j["system"]);
  s.epsilon = get_number(j["epsilon"], "epsilon");
  if (s.epsilon < 0.0) throw ConfigError("epsilon: must be nonnegative");
  s.horizon = get_count(j["horizon"], "horizon", 2);

  if (j.contains("a1")) {
    const auto& a = j["a1"];
    if (a.is_number()) {
      s.a1 = {get_number(a, "a1"), 0.0};
    } else if (a.is_array() && a.size() == 2) {
      s.a1 = {get_number(a[0], "a1[0]"), get_number(a[1], "a1[1]")};
    } else {
      throw ConfigError("a1: expected a number or [re, im]");
    }
  }
  if (s.system.domain_kind == DomainKind::RealLine && s.a1.imag() != 0.0)
    throw ConfigError("a1: real-line system needs a real a1");

  if (j.contains("residual")) {
    const auto& r = require_object(j["residual"], "residual");
    reject_unknown(r, "residual.", {"kind", "theta"});
    if (r.contains("kind")) s.residual.kind = parse_residual_kind(r["kind"]);
    if (r.contains("theta")) s.residual.theta = get_number(r["theta"], "residual.theta");
  }
  if (j.contains("analysis")) {
    const auto& a = require_object(j["analysis"], "analysis");
    reject_unknown(a, "analysis.", {"window", "tol", "max_period", "horizon"});
    if (a.contains("window")) s.analysis.window = get_count(a["window"], "analysis.window", 1);
    if (a.contains("tol")) s.analysis.tol = get_number(a["tol"], "analysis.tol");
    if (a.contains("max_period"))
      s.analysis.max_period = get_count(a["max_period"], "analysis.max_period", 1);
    if (a.contains("horizon")) s.analysis.horizon = get_count(a["horizon"], "analysis.horizon", 4);
    if (!(s.analysis.tol > 0.0)) throw ConfigError("analysis.tol: must be positive");
  }
  if (s.analysis.horizon < 4 * s.analysis.window)
    throw ConfigError("analysis.horizon: must be at least 4 * analysis.window");
  if (j.contains("shadow")) {
    const auto& a = require_object(j["shadow"], "shadow");
    reject_unknown(a, "shadow.", {"tol", "max_iter", "tail_fraction"});
    if (a.contains("tol")) s.shadow.tol = get_number(a["tol"], "shadow.tol");
    if (a.contains("max_iter")) s.shadow.max_iter = get_count(a["max_iter"], "shadow.max_iter", 1);
    if (a.contains("tail_fraction"))
      s.shadow.tail_fraction = get_number(a["tail_fraction"], "shadow.tail_fraction");
    if (!(s.shadow.tol > 0.0)) throw ConfigError("shadow.tol: must be positive");
    if (!(s.shadow.tail_fraction > 0.0)) throw ConfigError("shadow.tail_fraction: must be positive");
  }
  if (j.contains("output")) {
    const auto& o = require_object(j["output"], "output");
    reject_unknown(o, "output.", {"directory", "formats"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string()) throw ConfigError("output.directory: expected a string");
      s.output.directory = o["directory"].get<std::string>();
    }
    if (o.contains("formats")) {
      if (!o["formats"].is_array()) throw ConfigError("output.formats: expected an array");
      s.output.formats.clear();
      for (const auto& f : o["formats"]) {
        if (f != "csv" && f != "json") throw ConfigError("output.formats: expected \"csv\" or \"json\"");
        s.output.formats.push_back(f.get<std::string>());
      }
    }
  }
  return s;
}

inline json to_json(const Scenario& s) {
  json j;
  j["system"] = detail::system_json(s.system);
  j["a1"] = {s.a1.real(), s.a1.imag()};
  j["epsilon"] = s.epsilon;
  j["residual"] = {{"kind", residual_kind_name(s.residual.kind)}, {"theta", s.residual.theta}};
  j["horizon"] = s.horizon;
  j["analysis"] = {{"window", s.analysis.window},
                   {"tol", s.analysis.tol},
                   {"max_period", s.analysis.max_period},
                   {"horizon", s.analysis.horizon}};
  j["shadow"] = {{"tol", s.shadow.tol},
                 {"max_iter", s.shadow.max_iter},
                 {"tail_fraction", s.shadow.tail_fraction}};
  j["output"] = {{"directory", s.output.directory}, {"formats", s.output.formats}};
  return j;
}

inline Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return scenario_from_json(j);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario(text);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

inline json classification_json(const Classification& cls, std::size_t horizon) {
  json j;
  j["kind"] = class_kind_name(cls.kind);
  j["K"] = cls.K ? num(*cls.K) : json(nullptr);
  j["horizon"] = horizon;
  j["smoothing_period"] = cls.smoothing_period;
  j["tail_spread"] = num(cls.tail_spread);
  j["reason"] = cls.reason;
  if (cls.periodic) {
    const auto& p = *cls.periodic;
    j["periodic"] = {{"period", p.period},     {"prefix", p.prefix},
                     {"K", p.K},               {"values", p.values()},
                     {"constants", p.constants}, {"max_residual", p.max_residual}};
  } else {
    j["periodic"] = nullptr;
  }
  return j;
}

inline Classification classify_scenario(const Scenario& s) {
  const auto profile = build_profile(s.system, s.analysis.horizon);
  return classify(profile, s.system, {s.analysis.window, s.analysis.tol, s.analysis.max_period});
}

inline void write_json(const Scenario& s, const std::string& name, const json& j) {
  if (s.output.wants("json"))
    write_atomic(std::filesystem::path(s.output.directory) / name, j.dump(2) + "\n");
}

inline void write_csv(const Scenario& s, const std::string& name, const std::string& body) {
  if (s.output.wants("csv")) write_atomic(std::filesystem::path(s.output.directory) / name, body);
}

inline int run_analyze(const Scenario& s, std::ostream& log) {
  const auto profile = build_profile(s.system, s.analysis.horizon);
  const auto cls = classify(profile, s.system, {s.analysis.window, s.analysis.tol, s.analysis.max_period});
  std::string csv = "n,p_n,log_partial,avg\n";
  for (std::size_t n = 1; n <= profile.horizon; ++n) {
    csv += std::to_string(n) + "," + fmt17(growth_rate(s.system, n)) + "," +
           fmt17(profile.L(n)) + "," + fmt17(profile.avg[n - 1]) + "\n";
  }
  write_csv(s, "profile.csv", csv);
  write_json(s, "classification.json", classification_json(cls, profile.horizon));
  log << "classification " << class_kind_name(cls.kind);
  if (cls.K) log << " K=" << fmt17(*cls.K);
  log << "\n";
  return kExitPass;
}

inline int run_shadow(const Scenario& s, std::ostream& log) {
  json summary;
  summary["epsilon"] = s.epsilon;
  summary["horizon"] = s.horizon;
  const auto cls = classify_scenario(s);
  summary["classification"] = class_kind_name(cls.kind);
  summary["K"] = cls.K ? num(*cls.K) : json(nullptr);

  auto fail = [&](const std::string& verdict, const std::string& reason) {
    summary["verdict"] = verdict;
    summary["reason"] = reason;
    write_json(s, "summary.json", summary);
    log << verdict << ": " << reason << "\n";
    return kExitFailure;
  };

  const auto pseudo = generate_pseudo_orbit(s.system, s.a1, s.epsilon, s.residual, s.horizon);
  ShadowResult res;
  try {
    if (cls.kind == ClassKind::ConvergentBelowOne) {
      res = shadow_contracting(s.system, pseudo, *cls.K);
    } else if (cls.kind == ClassKind::ConvergentAboveOne) {
      res = shadow_expanding(s.system, pseudo, *cls.K,
                             {s.shadow.tol, s.shadow.max_iter, s.shadow.tail_fraction});
    } else {
      return fail("hypothesis_violation", std::string("classification is ") +
                                              class_kind_name(cls.kind) + ", no shadowing construction");
    }
  } catch (const HypothesisError& e) {
    return fail("hypothesis_violation", e.what());
  }

  std::string csv = "n,a_re,a_im,b_re,b_im,r_re,r_im,abs_err,bound,log10_abs_err\n";
  for (std::size_t n = 1; n <= pseudo.size(); ++n) {
    const Complex a = pseudo.a[n - 1];
    const Complex b = res.b[n - 1];
    const Complex r = pseudo.residual(n, s.system.domain_kind);
    const double err = std::abs(res.d[n - 1]);
    csv += std::to_string(n) + "," + fmt17(a.real()) + "," + fmt17(a.imag()) + "," +
           fmt17(b.real()) + "," + fmt17(b.imag()) + "," + fmt17(r.real()) + "," +
           fmt17(r.imag()) + "," + fmt17(err) + "," + fmt17(res.bound) + "," +
           fmt17(err > 0.0 ? std::log10(err) : -std::numeric_limits<double>::infinity()) + "\n";
  }
  write_csv(s, "orbit.csv", csv);

  const bool pass = res.bound_holds && !pseudo.overflow;
  summary["sup_err"] = num(res.sup_error);
  summary["bound"] = num(res.bound);
  summary["method"] = shadow_method_name(res.method);
  summary["truncation"] = res.meta.truncation;
  summary["iterations"] = res.meta.iterations;
  summary["residual_sup"] = num(res.meta.residual_sup);
  summary["bound_holds_from"] = res.meta.bound_holds_from;
  summary["verdict"] = pass ? "pass" : "fail";
  if (!pass)
    summary["reason"] = pseudo.overflow ? "pseudo-orbit overflowed before the horizon"
                                        : "sup error exceeds the asymptotic bound";
  write_json(s, "summary.json", summary);
  log << summary["verdict"].get<std::string>() << ": sup_err=" << fmt17(res.sup_error)
      << " bound=" << fmt17(res.bound) << "\n";
  return pass ? kExitPass : kExitFailure;
}

inline int run_instability(const Scenario& s, std::ostream& log) {
  const auto cls = classify_scenario(s);
  json summary;
  summary["classification"] = class_kind_name(cls.kind);
  summary["epsilon"] = s.epsilon;
  summary["horizon"] = s.horizon;
  DivergenceWitness w;
  try {
    w = witness_divergence(s.system, s.epsilon, s.horizon, cls, s.a1);
  } catch (const HypothesisError& e) {
    summary["verdict"] = "hypothesis_violation";
    summary["reason"] = e.what();
    write_json(s, "witness.json", summary);
    log << "hypothesis_violation: " << e.what() << "\n";
    return kExitFailure;
  }

  std::string csv =
      "k,n,lower_bound,S_n,observed_error,log10_lower_bound,log10_S_n,log10_observed,log_domain\n";
  bool pass = true;
  for (const auto& smp : w.samples) {
    csv += std::to_string(smp.k) + "," + std::to_string(smp.n) + "," + fmt17(smp.lower_bound) + "," +
           fmt17(smp.S_n) + "," + fmt17(smp.observed_error) + "," + fmt17(smp.log10_lower_bound) +
           "," + fmt17(smp.log10_S_n) + "," + fmt17(smp.log10_observed) + "," +
           (smp.log_domain ? "1" : "0") + "\n";
    if (smp.k < 1 || s.epsilon == 0.0) continue;
    // observed >= eps * lower bound, compared in log10 so overflowed samples count too.
    const double need = std::log10(s.epsilon) + smp.log10_lower_bound;
    if (!(smp.log10_observed >= need - 1e-9 * std::max(1.0, std::abs(need)))) pass = false;
  }
  write_csv(s, "witness.csv", csv);
  summary["m"] = w.m;
  summary["p_idx"] = w.p_idx;
  summary["q_idx"] = w.q_idx;
  summary["K_p"] = num(w.K_p);
  summary["K_q"] = num(w.K_q);
  summary["C_p"] = num(w.C_p);
  summary["samples"] = w.samples.size();
  summary["verdict"] = pass ? "pass" : "fail";
  if (!pass) summary["reason"] = "observed error below eps times the divergence lower bound";
  write_json(s, "witness.json", summary);
  log << summary["verdict"].get<std::string>() << ": " << w.samples.size() << " samples\n";
  return pass ? kExitPass : kExitFailure;
}

inline json claims_json(const std::vector<claims::ClaimResult>& results) {
  json j;
  j["claims"] = json::array();
  bool all = true;
  for (const auto& c : results) {
    j["claims"].push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"details", c.details}});
    all = all && c.passed;
  }
  j["all_passed"] = all;
  return j;
}

/// Runs the built-in checks; the scenario only supplies the output settings.
inline int run_reproduce(const OutputConfig& out, std::ostream& log) {
  const auto results = claims::run_all();
  const auto report = claims_json(results);
  if (out.wants("json"))
    write_atomic(std::filesystem::path(out.directory) / "reproduce.json", report.dump(2) + "\n");
  for (const auto& c : results) log << (c.passed ? "PASS " : "FAIL ") << c.id << " " << c.title << "\n";
  return report["all_passed"].get<bool>() ? kExitPass : kExitFailure;
}

inline int run(const Scenario& s, Command cmd, std::ostream& log) {
  switch (cmd) {
    case Command::Analyze: return run_analyze(s, log);
    case Command::Shadow: return run_shadow(s, log);
    case Command::Instability: return run_instability(s, log);
    case Command::Reproduce: return run_reproduce(s.output, log);
  }
  return kExitUsage;
}

}  // namespace hu_shadow::runner
