#pragma once

// Aggregated property suites behind the `verify` command. Every suite reports its worst
// residual against a fixed threshold; the triple under test is injectable so a corrupted
// structure can be fed through the same checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperlie/families.hpp"
#include "hyperlie/geometry.hpp"
#include "hyperlie/hypercomplex.hpp"
#include "hyperlie/known_groups.hpp"
#include "hyperlie/lie_algebra.hpp"
#include "hyperlie/mat4.hpp"
#include "hyperlie/sampling.hpp"

namespace hyperlie {

struct VerifyConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-10;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::size_t checks = 0;
};

namespace reference {

/// Nonzero hc2 brackets [e2,e4] = e3, [e4,e3] = e2, [e3,e2] = e4 (0-based in code).
inline StructureConstants hc2_constants() {
  StructureConstants c;
  const auto set = [&](std::size_t k, std::size_t l, std::size_t s) {
    c(k, l, s) = 1.0;
    c(l, k, s) = -1.0;
  };
  set(1, 3, 2);
  set(3, 2, 1);
  set(2, 1, 3);
  return c;
}

inline std::array<Mat4, kDim> hc2_basis_matrices() {
  return {Mat4::zero(),
          Mat4{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
          Mat4{{0, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 0, 0}, {0, 1, 0, 0}},
          Mat4{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, -1, 0, 0}, {0, 0, 0, 0}}};
}

}  // namespace reference

namespace detail {

struct SuiteBuilder {
  SuiteResult r;

  SuiteBuilder(std::string name, double threshold) {
    r.name = std::move(name);
    r.threshold = threshold;
    r.passed = true;
  }
  void check(double residual) {
    ++r.checks;
    r.max_residual = std::max(r.max_residual, residual);
    if (!(residual <= r.threshold)) r.passed = false;
  }
  void require(bool ok) {
    ++r.checks;
    if (!ok) r.passed = false;
  }
};

}  // namespace detail

inline std::vector<SuiteResult> run_verification(const VerifyConfig& cfg,
                                                 const HypercomplexTriple& h = standard_triple()) {
  using detail::SuiteBuilder;
  const NeutralMetric g = neutral_metric();
  std::mt19937_64 rng(cfg.seed);
  std::vector<SuiteResult> out;

  {
    SuiteBuilder s("quaternion_identities", 0.0);
    s.check(static_cast<double>(quaternion_defect(h)));
    s.check(static_cast<double>(anticommutation_defect(h)));
    for (int a = 1; a <= 3; ++a) s.check(static_cast<double>(compatibility_defect(h, g, a)));
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("lie_algebra_validity", 0.0);
    for (FamilyId f : kAllFamilies) {
      const auto c = constants_from_family(f);
      s.check(antisymmetry_defect(c));
      s.check(jacobi_defect(c));
      s.check(representation_defect(c, +1.0));
    }
    s.require(constants_from_family(FamilyId::hc2) == reference::hc2_constants());
    s.require(basis_matrices(constants_from_family(FamilyId::hc2)) == reference::hc2_basis_matrices());
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("characteristic_polynomial", 1e-12);
    for (std::size_t n = 0; n < cfg.trials; ++n) {
      const FamilyElement e = sample_generic(FamilyId::hc2, rng);
      const Poly4 p = char_poly(generator(e));
      const double delta = e.b() * e.b() + e.c() * e.c() + e.d() * e.d();
      s.check(std::max({std::abs(p.c[0]), std::abs(p.c[1]), std::abs(p.c[2] - delta), std::abs(p.c[3]),
                        std::abs(p.c[4] - 1.0)}));
    }
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("exponential_oracle_equivalence", cfg.tol);
    for (FamilyId f : kAllFamilies)
      for (std::size_t n = 0; n < cfg.trials; ++n) {
        const FamilyElement e = sample_generic(f, rng);
        s.check(max_abs(exp_closed_form(e).matrix - exp_series(generator(e))));
      }
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("degenerate_branch_audit", cfg.tol);
    const BranchReport br = branch_report({FamilyId::hc2, {0, 0, 0, 1}});
    s.require(!br.printed_consistent && br.printed_vs_oracle && *br.printed_vs_oracle > 0.1);
    s.check(br.used_vs_oracle);
    out.push_back(s.r);
  }

  std::array<StructureConstants, kAllFamilies.size()> constants;
  for (std::size_t n = 0; n < kAllFamilies.size(); ++n) constants[n] = constants_from_family(kAllFamilies[n]);

  {
    SuiteBuilder s("levi_civita_connection", 1e-11);
    for (const auto& c : constants) {
      const auto con = levi_civita(c, g);
      s.check(torsion_defect(con, c));
      s.check(metric_compatibility_defect(con, g.real()));
    }
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("nijenhuis_integrability", cfg.tol);
    for (const auto& c : constants)
      for (int a = 1; a <= 3; ++a) s.check(max_abs(nijenhuis(a, c, h)));
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("fundamental_tensor_properties", cfg.tol);
    for (const auto& c : constants) {
      const auto f = fundamental_tensors(levi_civita(c, g), h, g);
      for (int a = 1; a <= 3; ++a) {
        const auto d = f_symmetry_defects(a, f[a - 1], h);
        s.check(d.skew);
        s.check(d.j_invariant);
      }
      s.check(f_relation_defect(f, h));
    }
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("table1_classification", 0.0);
    for (std::size_t n = 0; n < kAllFamilies.size(); ++n) {
      const auto report = classify(constants[n], h, g, 1e-9);
      s.require(report.member_of(expected_class(kAllFamilies[n])));
    }
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("group_closure", cfg.tol);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    auto draw = [&](GroupId id) {
      GroupParams p{id, {}};
      for (double& x : p.p) x = dist(rng);
      return p;
    };
    for (GroupId id : {GroupId::G6, GroupId::G8, GroupId::G10})
      for (std::size_t n = 0; n < cfg.trials; ++n) s.check(closure_defect(id, draw(id), draw(id)));
    out.push_back(s.r);
  }
  {
    SuiteBuilder s("group_embeddings", kEmbeddingTol);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (std::size_t n = 0; n < 20; ++n) {
      s.check(embedding_check(FamilyId::hc4_1, EmbeddingMode::stated_coefficients, dist(rng)).candidates[0].residual);
      s.check(embedding_check(FamilyId::hc5_1, EmbeddingMode::stated_coefficients, dist(rng)).candidates[0].residual);
    }
    const auto g8 = embedding_check(FamilyId::hc3_2, EmbeddingMode::stated_coefficients, 1.0);
    s.check(g8.best_residual);
    s.require(g8.angle_discrepancy);
    out.push_back(s.r);
  }
  return out;
}

inline bool all_passed(const std::vector<SuiteResult>& suites) {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

}  // namespace hyperlie
