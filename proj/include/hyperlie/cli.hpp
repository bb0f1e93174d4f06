#pragma once

// Command-line front end: exp, classify, table1, verify.
//
// Exit codes: 0 success, 1 property failure, 2 usage error.
// JSON output has the top-level keys {command, config, results, verdicts, residuals}.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperlie/families.hpp"
#include "hyperlie/geometry.hpp"
#include "hyperlie/json_io.hpp"
#include "hyperlie/lie_algebra.hpp"
#include "hyperlie/sampling.hpp"
#include "hyperlie/verify.hpp"

namespace hyperlie::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { json, text };

struct RunConfig {
  std::string command;
  std::optional<FamilyId> family;
  std::array<double, 4> params{};
  double tol = 1e-10;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  Format format = Format::json;
};

/// Table matches require at least this fraction of draws per family.
inline constexpr double kRequiredMatchRate = 0.99;

struct Output {
  std::string command;
  Json config;
  Json results = Json::object();
  Json verdicts = Json::object();
  Json residuals = Json::object();
  std::vector<std::string> text;  // lines for --format text
};

inline Json config_json(const RunConfig& cfg) {
  return Json{{"family", cfg.family ? Json(std::string(family_name(*cfg.family))) : Json(nullptr)},
              {"params", cfg.params},
              {"tol", cfg.tol},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"format", cfg.format == Format::json ? "json" : "text"}};
}

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline std::string fmt(const Mat4& m) {
  std::ostringstream os;
  os << std::setprecision(12) << m;
  return os.str();
}

inline int cmd_exp(const RunConfig& cfg, Output& o) {
  const FamilyElement e{*cfg.family, cfg.params};
  const Mat4 a = generator(e);
  const BranchReport br = branch_report(e);
  const ExpResult closed = exp_closed_form(e);
  const Mat4 oracle = exp_series(a, 1e-16);
  const double diff = max_abs(closed.matrix - oracle);

  Json printed{{"kind", std::string(printed_kind_name(br.printed.kind))}, {"condition", br.printed.condition}};
  if (br.printed.coefficients) {
    printed["t"] = br.printed.coefficients->t;
    printed["u"] = br.printed.coefficients->u;
  }
  o.results = Json{{"family", std::string(family_name(e.family))},
                   {"params", e.params},
                   {"generator", to_json(a)},
                   {"t", closed.coefficients.t},
                   {"u", closed.coefficients.u},
                   {"branch", std::string(branch_name(closed.coefficients.branch))},
                   {"rule", closed.coefficients.rule},
                   {"closed_form", to_json(closed.matrix)},
                   {"oracle", to_json(oracle)},
                   {"max_abs_difference", diff},
                   {"printed_branch", printed}};
  o.verdicts = Json{{"agrees_with_oracle", diff <= cfg.tol}, {"printed_branch_consistent", br.printed_consistent}};
  o.residuals = Json{{"closed_vs_oracle", diff},
                     {"printed_vs_oracle", br.printed_vs_oracle ? Json(*br.printed_vs_oracle) : Json(nullptr)}};

  o.text = {"family            " + std::string(family_name(e.family)),
            "generator A\n" + fmt(a),
            "t = " + fmt(closed.coefficients.t) + ", u = " + fmt(closed.coefficients.u),
            "branch            " + std::string(branch_name(closed.coefficients.branch)) + " (" +
                closed.coefficients.rule + ")",
            "printed branch    " + std::string(printed_kind_name(br.printed.kind)) + " [" + br.printed.condition + "]" +
                (br.printed.coefficients ? (br.printed_consistent ? " consistent" : " INCONSISTENT") : ""),
            "closed-form e^A\n" + fmt(closed.matrix),
            "oracle e^A\n" + fmt(oracle),
            "max |difference|  " + fmt(diff)};
  return diff <= cfg.tol ? kExitOk : kExitFailure;
}

inline int cmd_classify(const RunConfig& cfg, Output& o, std::ostream& err) {
  const FamilyElement e{*cfg.family, cfg.params};
  const bool degenerate = e.family != FamilyId::hc1 && !is_generic(e, kGenericMargin);
  if (degenerate)
    err << "warning: parameters lie on the degenerate locus of " << family_name(e.family)
        << " (the generated one-parameter subgroup degenerates); the verdict describes the Lie algebra, "
           "which does not depend on the parameters\n";
  const ClassificationReport r = classify(e, cfg.tol);
  const TableClass expected = expected_class(e.family);
  const Json rj = to_json(r);

  o.results = Json{{"family", std::string(family_name(e.family))},
                   {"params", e.params},
                   {"expected_class", std::string(class_name(expected))},
                   {"finest_class", std::string(r.finest_class())},
                   {"degenerate_parameters", degenerate},
                   {"report", rj}};
  o.verdicts = rj.at("verdicts");
  o.verdicts["matches_table"] = r.member_of(expected);
  o.residuals = rj.at("residuals");

  o.text = {"family          " + std::string(family_name(e.family)),
            "expected class  " + std::string(class_name(expected)),
            "finest class    " + std::string(r.finest_class()),
            std::string("verdicts        K=") + (r.in_k ? "yes" : "no") + " HC=" + (r.in_hc ? "yes" : "no") +
                " HC'=" + (r.in_hc_prime ? "yes" : "no") + " W0=" + (r.in_w0 ? "yes" : "no") +
                " integrable=" + (r.integrable ? "yes" : "no"),
            std::string("matches table   ") + (r.member_of(expected) ? "yes" : "no")};
  for (const auto& [key, value] : o.residuals.items())
    o.text.push_back("  " + key + std::string(14 - std::min<std::size_t>(14, key.size()), ' ') +
                     fmt(value.get<double>()));
  return kExitOk;
}

inline int cmd_table1(const RunConfig& cfg, Output& o, std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  bool ok = true;
  o.results = Json::object();
  o.text.push_back("family  expected  matches       rate   finest");
  for (FamilyId f : kAllFamilies) {
    const TableClass expected = expected_class(f);
    const StructureConstants c = constants_from_family(f);
    std::size_t matches = 0;
    double worst = 0.0;
    std::string finest;
    for (std::size_t n = 0; n < cfg.trials; ++n) {
      const FamilyElement e = sample_generic(f, rng);
      // the brackets do not depend on the draw, only the element of the algebra does
      const ClassificationReport r = classify(c, standard_triple(), neutral_metric(), cfg.tol);
      finest = std::string(r.finest_class());
      if (r.member_of(expected)) {
        ++matches;
      } else {
        err << "deviation: " << family_name(f) << " params " << Json(e.params).dump()
            << " expected " << class_name(expected) << ", residuals " << to_json(r).at("residuals").dump() << "\n";
      }
      worst = std::max(worst, r.membership_residual(expected));
    }
    const double rate = static_cast<double>(matches) / static_cast<double>(cfg.trials);
    const bool pass = rate >= kRequiredMatchRate;
    ok = ok && pass;
    const std::string name(family_name(f));
    o.results[name] = Json{{"expected_class", std::string(class_name(expected))},
                           {"trials", cfg.trials},
                           {"matches", matches},
                           {"match_rate", rate},
                           {"finest_class", finest}};
    o.verdicts[name] = pass;
    o.residuals[name] = worst;
    std::ostringstream line;
    line << std::left << std::setw(8) << name << std::setw(10) << class_name(expected) << std::setw(6) << matches
         << "/" << std::setw(6) << cfg.trials << std::setw(7) << std::fixed << std::setprecision(2) << rate << "  "
         << finest << (pass ? "" : "  FAIL");
    o.text.push_back(line.str());
  }
  o.verdicts["all"] = ok;
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_verify(const RunConfig& cfg, Output& o) {
  const auto suites = run_verification({cfg.trials, cfg.seed, cfg.tol});
  Json list = Json::array();
  for (const auto& s : suites) {
    list.push_back(Json{{"name", s.name},
                        {"passed", s.passed},
                        {"max_residual", s.max_residual},
                        {"threshold", s.threshold},
                        {"checks", s.checks}});
    o.verdicts[s.name] = s.passed;
    o.residuals[s.name] = s.max_residual;
    std::ostringstream line;
    line << (s.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << s.name << " max residual "
         << std::setprecision(3) << std::scientific << s.max_residual << " (threshold " << s.threshold << ", "
         << s.checks << " checks)";
    o.text.push_back(line.str());
  }
  o.results = Json{{"suites", list}};
  const bool ok = all_passed(suites);
  o.verdicts["all"] = ok;
  return ok ? kExitOk : kExitFailure;
}

inline void emit(const RunConfig& cfg, const Output& o, std::ostream& out) {
  if (cfg.format == Format::json) {
    const Json doc{{"command", o.command},
                   {"config", o.config},
                   {"results", o.results},
                   {"verdicts", o.verdicts},
                   {"residuals", o.residuals}};
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& line : o.text) out << line << "\n";
  }
}

}  // namespace detail

/// Runs one CLI invocation; output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypercomplex structures with Hermitian-Norden metrics on 4-dimensional matrix Lie groups",
               "hyperlie"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string family_text;
  std::vector<double> params;
  std::string format_text = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", family_text, "family: hc1, hc2, hc3.1, hc3.2, hc4.1, hc4.2, hc5.1, hc5.2");
    sub->add_option("--params", params, "a,b,c,d (missing trailing values are 0; unused slots ignored)")
        ->delimiter(',')
        ->allow_extra_args(false);
    sub->add_option("--tol", cfg.tol, "tolerance (default 1e-10)")->check(CLI::PositiveNumber);
    sub->add_option("--trials", cfg.trials, "random draws per family (default 100)")->check(CLI::Range(1, 1000000));
    sub->add_option("--seed", cfg.seed, "RNG seed (default 42; HYPERLIE_SEED overrides)");
    sub->add_option("--format", format_text, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  CLI::App* exp = app.add_subcommand("exp", "closed-form exponential of a family element vs the series oracle");
  CLI::App* cls = app.add_subcommand("classify", "class predicates and verdicts for a family");
  CLI::App* tab = app.add_subcommand("table1", "reproduce the family/class table over random draws");
  CLI::App* ver = app.add_subcommand("verify", "run every property suite");
  for (CLI::App* sub : {exp, cls, tab, ver}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (exp->parsed()) cfg.command = "exp";
  if (cls->parsed()) cfg.command = "classify";
  if (tab->parsed()) cfg.command = "table1";
  if (ver->parsed()) cfg.command = "verify";
  cfg.format = format_text == "text" ? Format::text : Format::json;

  if (!family_text.empty()) {
    cfg.family = parse_family(family_text);
    if (!cfg.family) {
      err << "error: unknown family '" << family_text << "'\n";
      return kExitUsage;
    }
  }
  if (params.size() > 4) {
    err << "error: --params takes at most 4 values\n";
    return kExitUsage;
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!std::isfinite(params[i])) {
      err << "error: --params values must be finite\n";
      return kExitUsage;
    }
    cfg.params[i] = params[i];
  }
  if (const char* env = std::getenv("HYPERLIE_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      err << "error: HYPERLIE_SEED must be an unsigned integer\n";
      return kExitUsage;
    }
  }
  if ((cfg.command == "exp" || cfg.command == "classify") && !cfg.family) {
    err << "error: " << cfg.command << " requires --family\n";
    return kExitUsage;
  }

  Output o;
  o.command = cfg.command;
  o.config = config_json(cfg);
  int code = kExitOk;
  try {
    if (cfg.command == "exp") code = detail::cmd_exp(cfg, o);
    else if (cfg.command == "classify") code = detail::cmd_classify(cfg, o, err);
    else if (cfg.command == "table1") code = detail::cmd_table1(cfg, o, err);
    else code = detail::cmd_verify(cfg, o);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  detail::emit(cfg, o, out);
  return code;
}

}  // namespace hyperlie::cli
