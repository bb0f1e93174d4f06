#pragma once

// The eight generator layouts A(a,b,c,d) of the 4-dimensional hypercomplex Lie algebras
// and their closed-form exponentials e^A = E + tA + uA^2.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperlie/mat4.hpp"

namespace hyperlie {

enum class FamilyId { hc1, hc2, hc3_1, hc3_2, hc4_1, hc4_2, hc5_1, hc5_2 };

inline constexpr std::array<FamilyId, 8> kAllFamilies = {
    FamilyId::hc1,   FamilyId::hc2,   FamilyId::hc3_1, FamilyId::hc3_2,
    FamilyId::hc4_1, FamilyId::hc4_2, FamilyId::hc5_1, FamilyId::hc5_2};

/// Dotted display name, e.g. "hc3.1".
inline std::string_view family_name(FamilyId f) {
  switch (f) {
    case FamilyId::hc1: return "hc1";
    case FamilyId::hc2: return "hc2";
    case FamilyId::hc3_1: return "hc3.1";
    case FamilyId::hc3_2: return "hc3.2";
    case FamilyId::hc4_1: return "hc4.1";
    case FamilyId::hc4_2: return "hc4.2";
    case FamilyId::hc5_1: return "hc5.1";
    case FamilyId::hc5_2: return "hc5.2";
  }
  return "?";
}

/// Accepts the dotted form ("hc3.1") and the identifier form ("hc3_1").
inline std::optional<FamilyId> parse_family(std::string_view name) {
  for (FamilyId f : kAllFamilies) {
    const std::string_view dotted = family_name(f);
    if (name == dotted) return f;
    std::string underscored(dotted);
    for (char& ch : underscored)
      if (ch == '.') ch = '_';
    if (name == underscored) return f;
  }
  return std::nullopt;
}

struct FamilyElement {
  FamilyId family = FamilyId::hc1;
  std::array<double, 4> params{};  // (a, b, c, d)

  double a() const { return params[0]; }
  double b() const { return params[1]; }
  double c() const { return params[2]; }
  double d() const { return params[3]; }
};

/// The printed 4x4 layout with (a,b,c,d) substituted.
inline Mat4 generator(const FamilyElement& e) {
  const double a = e.a(), b = e.b(), c = e.c(), d = e.d();
  switch (e.family) {
    case FamilyId::hc1:
      return Mat4::zero();
    case FamilyId::hc2:
      return Mat4{{0, 0, 0, 0}, {0, 0, d, -c}, {0, -d, 0, b}, {0, c, -b, 0}};
    case FamilyId::hc3_1:
      return Mat4{{0, d, 0, -b}, {0, c, 0, a}, {0, -b, 0, -d}, {0, -a, 0, c}};
    case FamilyId::hc3_2:
      return Mat4{{c, d, 0, 0}, {-d, c, 0, 0}, {-a, -b, 0, 0}, {b, -a, 0, 0}};
    case FamilyId::hc4_1:
      return Mat4{{0, b, c, d}, {0, -a, 0, 0}, {0, 0, -a, 0}, {0, 0, 0, -a}};
    case FamilyId::hc4_2:
      return Mat4{{-d, 0, 0, 0}, {0, -d, 0, 0}, {0, 0, -d, 0}, {a, b, c, 0}};
    case FamilyId::hc5_1:
      return Mat4{{0, b, c / 2, d / 2}, {0, -a, 0, 0}, {0, d / 2, -a / 2, 0}, {0, -c / 2, 0, -a / 2}};
    case FamilyId::hc5_2:
      return Mat4{{-d / 2, 0, -b / 2, 0}, {0, -d / 2, a / 2, 0}, {0, 0, -d, 0}, {a / 2, b / 2, c, 0}};
  }
  throw std::invalid_argument("generator: unknown family");
}

/// The scalar whose vanishing puts a family on its degenerate locus:
/// sqrt(b^2+c^2+d^2) for hc2, |a| for hc3.1/hc4.1/hc5.1, |d| for hc3.2/hc4.2/hc5.2,
/// and 0 for the abelian hc1.
inline double branch_measure(const FamilyElement& e) {
  switch (e.family) {
    case FamilyId::hc1: return 0.0;
    case FamilyId::hc2: return std::sqrt(e.b() * e.b() + e.c() * e.c() + e.d() * e.d());
    case FamilyId::hc3_1:
    case FamilyId::hc4_1:
    case FamilyId::hc5_1: return std::abs(e.a());
    case FamilyId::hc3_2:
    case FamilyId::hc4_2:
    case FamilyId::hc5_2: return std::abs(e.d());
  }
  return 0.0;
}

/// True when the element lies at least `margin` away from the family's degenerate locus.
/// hc1 has no non-degenerate region and is always accepted.
inline bool is_generic(const FamilyElement& e, double margin) {
  return e.family == FamilyId::hc1 || branch_measure(e) >= margin;
}

enum class ExpBranch { generic, degenerate, oracle_fallback };

inline std::string_view branch_name(ExpBranch b) {
  switch (b) {
    case ExpBranch::generic: return "generic";
    case ExpBranch::degenerate: return "degenerate";
    case ExpBranch::oracle_fallback: return "oracle_fallback";
  }
  return "?";
}

struct ExpCoefficients {
  double t = 1.0;
  double u = 0.0;
  ExpBranch branch = ExpBranch::degenerate;
  std::string rule;  // human-readable reason for the branch
};

// Thresholds of the branch policy.
inline constexpr double kNilpotentTol = 1e-13;      // ||A^q|| <= tol * ||A||^q
inline constexpr double kTaylorDeltaTol = 1e-12;    // hc2: Taylor (t,u) below this Delta
inline constexpr double kNearDegenerateTol = 1e-4;  // below this branch_measure -> oracle
inline constexpr double kOracleTol = 1e-14;         // exp_series tolerance for fallback

namespace detail {

/// hc2: t = sin(s)/s, u = (1 - cos s)/s^2 with s^2 = Delta.
inline std::pair<double, double> rotation_tu(double delta) {
  if (delta < kTaylorDeltaTol) {
    const double t = 1.0 - delta / 6.0 + delta * delta / 120.0;
    const double u = 0.5 - delta / 24.0 + delta * delta / 720.0;
    return {t, u};
  }
  const double s = std::sqrt(delta);
  const double h = std::sin(0.5 * s);
  // 1 - cos s = 2 sin^2(s/2), free of cancellation for small s
  return {std::sin(s) / s, 2.0 * h * h / delta};
}

/// hc3.x with rotation parameter p and growth c: spectrum {0, 0, c +- ip}.
inline std::pair<double, double> spiral_tu(double p, double c) {
  const double delta = p * (p * p + c * c);
  const double ec = std::exp(c);
  const double t = (-2.0 * p * c * (1.0 - ec * std::cos(p)) + (p * p - c * c) * ec * std::sin(p)) / delta;
  const double u = (p * (1.0 - ec * std::cos(p)) + c * ec * std::sin(p)) / delta;
  return {t, u};
}

/// hc4.x: spectrum {0, -p, -p, -p}.
inline std::pair<double, double> hyperbolic_tu(double p) {
  return {1.0 / p, std::exp(-p) / (p * p)};
}

/// hc5.x: spectrum {0, -p, -p/2, -p/2}.
inline std::pair<double, double> complex_hyperbolic_tu(double p) {
  const double e1 = std::exp(-p);
  const double eh = std::exp(-0.5 * p);
  return {(e1 - 4.0 * eh + 3.0) / p, (2.0 * e1 - 4.0 * eh + 2.0) / (p * p)};
}

inline double frobenius_dot(const Mat4& x, const Mat4& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) s += x(i, j) * y(i, j);
  return s;
}

/// Least-squares (t,u) with e^A - E ~ tA + uA^2, used to report coefficients for the
/// oracle fallback. When A and A^2 are linearly dependent u is pinned to 0.
inline std::pair<double, double> fit_tu(const Mat4& a, const Mat4& expa) {
  const Mat4 a2 = a * a;
  const Mat4 rhs = expa - Mat4::identity();
  const double g11 = frobenius_dot(a, a), g12 = frobenius_dot(a, a2), g22 = frobenius_dot(a2, a2);
  const double r1 = frobenius_dot(a, rhs), r2 = frobenius_dot(a2, rhs);
  const double det = g11 * g22 - g12 * g12;
  if (g11 == 0.0) return {1.0, 0.0};
  if (std::abs(det) <= 1e-12 * g11 * g22) return {r1 / g11, 0.0};
  return {(r1 * g22 - r2 * g12) / det, (g11 * r2 - g12 * r1) / det};
}

inline std::optional<std::pair<double, double>> generic_tu(const FamilyElement& e) {
  if (branch_measure(e) < kNearDegenerateTol && e.family != FamilyId::hc2) return std::nullopt;
  switch (e.family) {
    case FamilyId::hc1: return std::nullopt;
    case FamilyId::hc2: {
      const double delta = e.b() * e.b() + e.c() * e.c() + e.d() * e.d();
      if (delta == 0.0) return std::nullopt;
      return rotation_tu(delta);
    }
    case FamilyId::hc3_1: return spiral_tu(e.a(), e.c());
    case FamilyId::hc3_2: return spiral_tu(e.d(), e.c());
    case FamilyId::hc4_1: return hyperbolic_tu(e.a());
    case FamilyId::hc4_2: return hyperbolic_tu(e.d());
    case FamilyId::hc5_1: return complex_hyperbolic_tu(e.a());
    case FamilyId::hc5_2: return complex_hyperbolic_tu(e.d());
  }
  return std::nullopt;
}

}  // namespace detail

/// Chooses (t,u) for e^A = E + tA + uA^2.
///
/// Policy, in order:
///  1. A = 0                                   -> (1, 0), degenerate
///  2. A^2 = 0 (relative kNilpotentTol)        -> (1, 0), degenerate
///     A^3 = 0                                 -> (1, 1/2), degenerate
///  3. generic condition of the family holds   -> closed-form (t, u), generic
///     (hc2: Delta > 0, Taylor in Delta below kTaylorDeltaTol; other families:
///      branch_measure >= kNearDegenerateTol)
///  4. otherwise                               -> oracle_fallback, (t, u) fitted to exp_series
inline ExpCoefficients exp_coefficients(const FamilyElement& e) {
  const Mat4 a = generator(e);
  require_finite(a, "exp_coefficients");
  const double na = max_abs(a);
  if (na == 0.0) return {1.0, 0.0, ExpBranch::degenerate, "A = 0"};

  const Mat4 a2 = a * a;
  if (max_abs(a2) <= kNilpotentTol * na * na)
    return {1.0, 0.0, ExpBranch::degenerate, "A nilpotent of index 2: e^A = E + A"};
  if (max_abs(a2 * a) <= kNilpotentTol * na * na * na)
    return {1.0, 0.5, ExpBranch::degenerate, "A nilpotent of index 3: e^A = E + A + A^2/2"};

  if (auto tu = detail::generic_tu(e)) {
    std::string rule = "closed form";
    if (e.family == FamilyId::hc2) {
      const double delta = e.b() * e.b() + e.c() * e.c() + e.d() * e.d();
      if (delta < kTaylorDeltaTol) rule = "closed form, Taylor expansion in Delta";
    }
    return {tu->first, tu->second, ExpBranch::generic, rule};
  }

  const auto [t, u] = detail::fit_tu(a, exp_series(a, kOracleTol));
  return {t, u, ExpBranch::oracle_fallback, "no valid closed form at these parameters"};
}

struct ExpResult {
  Mat4 matrix;
  ExpCoefficients coefficients;

  bool from_oracle() const { return coefficients.branch == ExpBranch::oracle_fallback; }
};

/// E + tA + uA^2, or exp_series(A) when the branch policy falls back to the oracle.
inline ExpResult exp_closed_form(const FamilyElement& e) {
  const Mat4 a = generator(e);
  ExpCoefficients coeffs = exp_coefficients(e);
  if (coeffs.branch == ExpBranch::oracle_fallback) return {exp_series(a, kOracleTol), std::move(coeffs)};
  return {Mat4::identity() + coeffs.t * a + coeffs.u * (a * a), std::move(coeffs)};
}

/// The case split exactly as printed next to each generator, without this library's
/// policy adjustments.
struct PrintedBranch {
  enum class Kind { generic, degenerate, none };
  Kind kind = Kind::none;
  std::string condition;
  std::optional<ExpCoefficients> coefficients;  // empty when no printed case applies
};

inline std::string_view printed_kind_name(PrintedBranch::Kind k) {
  switch (k) {
    case PrintedBranch::Kind::generic: return "generic";
    case PrintedBranch::Kind::degenerate: return "degenerate";
    case PrintedBranch::Kind::none: return "none";
  }
  return "?";
}

inline PrintedBranch printed_branch(const FamilyElement& e) {
  using Kind = PrintedBranch::Kind;
  const double a = e.a(), b = e.b(), c = e.c(), d = e.d();
  const auto degenerate = [](std::string cond) {
    return PrintedBranch{Kind::degenerate, std::move(cond), ExpCoefficients{1.0, 0.0, ExpBranch::degenerate, "t=1, u=0"}};
  };
  const auto generic = [](std::string cond, std::pair<double, double> tu) {
    return PrintedBranch{Kind::generic, std::move(cond), ExpCoefficients{tu.first, tu.second, ExpBranch::generic, "printed formula"}};
  };
  switch (e.family) {
    case FamilyId::hc1:
      return degenerate("always");
    case FamilyId::hc2: {
      if (b == 0.0 && c == 0.0) return degenerate("(b,c) = (0,0)");
      const double delta = b * b + c * c + d * d;
      const double s = std::sqrt(delta);
      return generic("(b,c) != (0,0)", {std::sin(s) / s, (1.0 - std::cos(s)) / delta});
    }
    case FamilyId::hc3_1:
    case FamilyId::hc3_2: {
      const double p = e.family == FamilyId::hc3_1 ? a : d;
      if (p * (p * p + c * c) != 0.0)
        return generic(e.family == FamilyId::hc3_1 ? "a(a^2+c^2) != 0" : "d(c^2+d^2) != 0",
                       detail::spiral_tu(p, c));
      if (p == 0.0 && c == 0.0)
        return degenerate(e.family == FamilyId::hc3_1 ? "(a,c) = (0,0)" : "(c,d) = (0,0)");
      return PrintedBranch{Kind::none, "Delta = 0 with the pair off the origin: no printed case", std::nullopt};
    }
    case FamilyId::hc4_1:
    case FamilyId::hc4_2: {
      const bool first = e.family == FamilyId::hc4_1;
      const double p = first ? a : d;
      if (p == 0.0) return degenerate(first ? "a = 0" : "d = 0");
      return generic(first ? "a != 0" : "d != 0", detail::hyperbolic_tu(p));
    }
    case FamilyId::hc5_1:
    case FamilyId::hc5_2: {
      const bool first = e.family == FamilyId::hc5_1;
      const double p = first ? a : d;
      if (p == 0.0) return degenerate(first ? "a = 0" : "d = 0");
      return generic(first ? "a != 0" : "d != 0", detail::complex_hyperbolic_tu(p));
    }
  }
  return {};
}

inline constexpr double kBranchConsistencyTol = 1e-10;

struct BranchReport {
  FamilyElement element;
  PrintedBranch printed;
  std::optional<double> printed_vs_oracle;  // max-abs difference, empty if no printed case
  bool printed_consistent = false;
  ExpCoefficients used;
  double used_vs_oracle = 0.0;
};

/// Compares the printed case for these parameters, and the branch this library picks,
/// against exp_series. Consistency is max-abs difference <= 1e-10 * max(1, |e^A|).
inline BranchReport branch_report(const FamilyElement& e) {
  const Mat4 a = generator(e);
  const Mat4 oracle = exp_series(a, 1e-16);
  const double scale = std::max(1.0, max_abs(oracle));

  BranchReport r;
  r.element = e;
  r.printed = printed_branch(e);
  if (r.printed.coefficients) {
    const Mat4 printed = Mat4::identity() + r.printed.coefficients->t * a + r.printed.coefficients->u * (a * a);
    r.printed_vs_oracle = max_abs(printed - oracle);
    r.printed_consistent = *r.printed_vs_oracle <= kBranchConsistencyTol * scale;
  }
  ExpResult used = exp_closed_form(e);
  r.used = std::move(used.coefficients);
  r.used_vs_oracle = max_abs(used.matrix - oracle);
  return r;
}

}  // namespace hyperlie
