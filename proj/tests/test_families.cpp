#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hyperlie/families.hpp"
#include "hyperlie/sampling.hpp"

using namespace hyperlie;

namespace {

// The e^A matrix displayed for hc2 in terms of (b, c, d, t, u).
Mat4 hc2_display(double b, double c, double d, double t, double u) {
  return Mat4{{1, 0, 0, 0},
              {0, 1 - (c * c + d * d) * u, b * c * u + d * t, b * d * u - c * t},
              {0, b * c * u - d * t, 1 - (b * b + d * d) * u, c * d * u + b * t},
              {0, b * d * u + c * t, c * d * u - b * t, 1 - (b * b + c * c) * u}};
}

}  // namespace

TEST(Family, Names) {
  EXPECT_EQ(family_name(FamilyId::hc3_1), "hc3.1");
  EXPECT_EQ(parse_family("hc5.2"), FamilyId::hc5_2);
  EXPECT_EQ(parse_family("hc4_1"), FamilyId::hc4_1);
  EXPECT_FALSE(parse_family("hc9").has_value());
  for (FamilyId f : kAllFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
}

TEST(Generator, Layouts) {
  EXPECT_EQ(generator({FamilyId::hc1, {1, 2, 3, 4}}), Mat4::zero());
  EXPECT_EQ(generator({FamilyId::hc2, {9, 1, 2, 3}}),
            (Mat4{{0, 0, 0, 0}, {0, 0, 3, -2}, {0, -3, 0, 1}, {0, 2, -1, 0}}));
  EXPECT_EQ(generator({FamilyId::hc4_1, {1, 2, 3, 4}}),
            (Mat4{{0, 2, 3, 4}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}));
  EXPECT_EQ(generator({FamilyId::hc5_2, {2, 4, 6, 8}}),
            (Mat4{{-4, 0, -2, 0}, {0, -4, 1, 0}, {0, 0, -8, 0}, {1, 2, 6, 0}}));
}

TEST(ExpCoefficients, KnownValues) {
  // hc2 with Delta = pi^2: t = sin(pi)/pi = 0, u = 2/pi^2
  const auto k = exp_coefficients({FamilyId::hc2, {0, std::numbers::pi, 0, 0}});
  EXPECT_EQ(k.branch, ExpBranch::generic);
  EXPECT_NEAR(k.t, 0.0, 1e-15);
  EXPECT_NEAR(k.u, 2.0 / (std::numbers::pi * std::numbers::pi), 1e-15);

  const auto z = exp_coefficients({FamilyId::hc1, {1, 2, 3, 4}});
  EXPECT_EQ(z.branch, ExpBranch::degenerate);
  EXPECT_EQ(z.t, 1.0);
  EXPECT_EQ(z.u, 0.0);

  const auto h = exp_coefficients({FamilyId::hc4_1, {1, 0, 0, 0}});
  EXPECT_EQ(h.branch, ExpBranch::generic);
  EXPECT_NEAR(h.t, 1.0, 1e-15);
  EXPECT_NEAR(h.u, std::exp(-1.0), 1e-15);
}

TEST(ExpCoefficients, NilpotentBranches) {
  // hc4.1 with a = 0: A^2 = 0
  const auto n2 = exp_coefficients({FamilyId::hc4_1, {0, 1, 2, 3}});
  EXPECT_EQ(n2.branch, ExpBranch::degenerate);
  EXPECT_EQ(n2.u, 0.0);
  // hc3.1 with a = c = 0 and b, d != 0 is nilpotent of index 3 or less
  const FamilyElement el{FamilyId::hc3_1, {0, 1, 0, 2}};
  const ExpResult r = exp_closed_form(el);
  EXPECT_EQ(r.coefficients.branch, ExpBranch::degenerate);
  EXPECT_LE(max_abs(r.matrix - exp_series(generator(el))), 1e-14);
}

TEST(ExpClosedForm, MatchesSeriesOnGenericDraws) {
  std::mt19937_64 rng(11);
  for (FamilyId f : kAllFamilies)
    for (int n = 0; n < 200; ++n) {
      const FamilyElement el = sample_generic(f, rng);
      ASSERT_TRUE(is_generic(el, kGenericMargin));
      const ExpResult r = exp_closed_form(el);
      EXPECT_FALSE(r.from_oracle());
      EXPECT_LE(max_abs(r.matrix - exp_series(generator(el))), 1e-10) << family_name(f);
    }
}

TEST(ExpClosedForm, Hc2DisplayedMatrix) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 50; ++n) {
    const FamilyElement el = sample_generic(FamilyId::hc2, rng);
    const auto k = exp_coefficients(el);
    const Mat4 display = hc2_display(el.b(), el.c(), el.d(), k.t, k.u);
    EXPECT_LE(max_abs(exp_closed_form(el).matrix - display), 1e-12);
  }
}

TEST(ExpClosedForm, Hc2ContinuousThroughTaylorSwitch) {
  const double s = std::sqrt(kTaylorDeltaTol);
  for (double f : {0.999, 1.0, 1.001}) {
    const FamilyElement el{FamilyId::hc2, {0, s * f, 0, 0}};
    EXPECT_LE(max_abs(exp_closed_form(el).matrix - exp_series(generator(el))), 1e-15);
    const auto k = exp_coefficients(el);
    EXPECT_NEAR(k.t, 1.0, 1e-8);
    EXPECT_NEAR(k.u, 0.5, 1e-8);
  }
}

TEST(ExpClosedForm, Hc5InterpolationIdentities) {
  // e^A = E + tA + uA^2 must hold on the eigenvalues 0, -a, -a/2.
  for (double a = 0.1; a <= 3.0; a += 0.1) {
    const auto [t, u] = detail::complex_hyperbolic_tu(a);
    EXPECT_NEAR(1.0 - a * t + a * a * u, std::exp(-a), 1e-12);
    EXPECT_NEAR(1.0 - 0.5 * a * t + 0.25 * a * a * u, std::exp(-0.5 * a), 1e-12);
  }
}

TEST(ExpClosedForm, NearDegenerateFallsBackToOracle) {
  const FamilyElement el{FamilyId::hc3_1, {1e-7, 0.3, 1.2, -0.4}};
  const ExpResult r = exp_closed_form(el);
  EXPECT_TRUE(r.from_oracle());
  EXPECT_LE(max_abs(r.matrix - exp_series(generator(el))), 1e-13);
  // The fitted coefficients describe e^A as E + tA + uA^2 only approximately: the
  // least-squares system is ill-conditioned this close to the degenerate locus.
  const Mat4 a = generator(el);
  EXPECT_LE(max_abs(Mat4::identity() + r.coefficients.t * a + r.coefficients.u * (a * a) - r.matrix), 1e-6);
}

TEST(ExpClosedForm, OffOriginDegenerateLocus) {
  // hc3.2 with d = 0 but c != 0: no printed case, library must still be exact
  const FamilyElement el{FamilyId::hc3_2, {0.4, -1.1, 1.3, 0}};
  EXPECT_EQ(printed_branch(el).kind, PrintedBranch::Kind::none);
  EXPECT_LE(max_abs(exp_closed_form(el).matrix - exp_series(generator(el))), 1e-12);
}

TEST(ExpClosedForm, RejectsNonFinite) {
  EXPECT_THROW(exp_closed_form({FamilyId::hc2, {0, std::nan(""), 0, 0}}), NonFiniteError);
}

TEST(BranchReport, Hc2PrintedDegenerateSplitIsInconsistent) {
  const BranchReport r = branch_report({FamilyId::hc2, {0, 0, 0, 1}});
  EXPECT_EQ(r.printed.kind, PrintedBranch::Kind::degenerate);
  ASSERT_TRUE(r.printed_vs_oracle.has_value());
  EXPECT_GT(*r.printed_vs_oracle, 0.1);
  EXPECT_FALSE(r.printed_consistent);
  EXPECT_EQ(r.used.branch, ExpBranch::generic);
  EXPECT_LE(r.used_vs_oracle, 1e-10);
}

TEST(BranchReport, PrintedGenericCasesAreConsistent) {
  std::mt19937_64 rng(13);
  for (FamilyId f : kAllFamilies)
    for (int n = 0; n < 20; ++n) {
      const BranchReport r = branch_report(sample_generic(f, rng));
      EXPECT_TRUE(r.printed_consistent) << family_name(f);
      EXPECT_LE(r.used_vs_oracle, 1e-10);
    }
}

TEST(Sampling, DeterministicForSeed) {
  std::mt19937_64 a(5), b(5);
  for (int n = 0; n < 10; ++n) EXPECT_EQ(sample_generic(FamilyId::hc5_1, a).params, sample_generic(FamilyId::hc5_1, b).params);
}

TEST(Sampling, RespectsMargin) {
  std::mt19937_64 rng(14);
  for (FamilyId f : kAllFamilies)
    for (int n = 0; n < 100; ++n) {
      const FamilyElement el = sample_generic(f, rng);
      EXPECT_TRUE(f == FamilyId::hc1 || branch_measure(el) >= kGenericMargin);
      for (double p : el.params) {
        EXPECT_GE(p, -2.0);
        EXPECT_LE(p, 2.0);
      }
    }
}
