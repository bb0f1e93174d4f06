#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "hyperlie/geometry.hpp"
#include "hyperlie/sampling.hpp"

using namespace hyperlie;

namespace {

const HypercomplexTriple kH = standard_triple();
const NeutralMetric kG = neutral_metric();

// Index of the antisymmetric bracket variable C(k,l,s), k < l.
struct BracketVar {
  std::size_t k, l, s;
};

std::vector<BracketVar> bracket_vars() {
  std::vector<BracketVar> v;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = k + 1; l < 4; ++l)
      for (std::size_t s = 0; s < 4; ++s) v.push_back({k, l, s});
  return v;
}

StructureConstants from_coordinates(const Eigen::VectorXd& x) {
  const auto vars = bracket_vars();
  StructureConstants c;
  for (std::size_t n = 0; n < vars.size(); ++n) {
    c(vars[n].k, vars[n].l, vars[n].s) = x(static_cast<Eigen::Index>(n));
    c(vars[n].l, vars[n].k, vars[n].s) = -x(static_cast<Eigen::Index>(n));
  }
  return c;
}

void append(std::vector<double>& out, const VectorTensor2& n) {
  for (const auto& row : n)
    for (const auto& v : row)
      for (double x : v.v) out.push_back(x);
}

}  // namespace

TEST(LeviCivita, AbelianIsFlat) {
  const auto con = levi_civita(constants_from_family(FamilyId::hc1), kG);
  EXPECT_EQ(max_abs(con.gamma), 0.0);
}

TEST(LeviCivita, TorsionFreeAndMetric) {
  for (FamilyId f : kAllFamilies) {
    const auto c = constants_from_family(f);
    const auto con = levi_civita(c, kG);
    EXPECT_LE(torsion_defect(con, c), 1e-11) << family_name(f);
    EXPECT_LE(metric_compatibility_defect(con, kG.real()), 1e-11) << family_name(f);
  }
}

TEST(LeviCivita, RandomMetricAndBrackets) {
  // Koszul solution for a non-diagonal metric on a Jacobi-satisfying algebra
  const auto c = constants_from_family(FamilyId::hc5_1);
  const Mat4 gram{{2, 1, 0, 0}, {1, 3, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, -2}};
  const auto con = levi_civita(c, gram);
  EXPECT_LE(torsion_defect(con, c), 1e-12);
  EXPECT_LE(metric_compatibility_defect(con, gram), 1e-12);
  EXPECT_THROW(levi_civita(c, Mat4::diagonal(1, 1, 0, -1)), Error);
}

TEST(FundamentalTensor, AbelianVanishes) {
  const auto f = fundamental_tensors(levi_civita(constants_from_family(FamilyId::hc1), kG), kH, kG);
  for (const auto& t : f) EXPECT_EQ(max_abs(t), 0.0);
}

TEST(FundamentalTensor, SymmetryDisplaysHold) {
  for (FamilyId f : kAllFamilies) {
    const auto fs = fundamental_tensors(levi_civita(constants_from_family(f), kG), kH, kG);
    for (int a = 1; a <= 3; ++a) {
      const auto d = f_symmetry_defects(a, fs[a - 1], kH);
      EXPECT_LE(d.skew, 1e-10) << family_name(f) << " alpha " << a;
      EXPECT_LE(d.j_invariant, 1e-10) << family_name(f) << " alpha " << a;
    }
  }
}

TEST(FundamentalTensor, CyclicRelationHolds) {
  for (FamilyId f : kAllFamilies)
    EXPECT_LE(f_relation_defect(constants_from_family(f), kH, kG), 1e-10) << family_name(f);
}

TEST(FundamentalTensor, PrintedSignFailsOnNonKahlerFamilies) {
  EXPECT_EQ(f_relation_defect(constants_from_family(FamilyId::hc1), kH, kG, FRelationSign::alpha_printed), 0.0);
  for (FamilyId f : {FamilyId::hc2, FamilyId::hc4_1, FamilyId::hc5_2})
    EXPECT_GT(f_relation_defect(constants_from_family(f), kH, kG, FRelationSign::alpha_printed), 1.0)
        << family_name(f);
}

TEST(FundamentalTensor, RelationDetectsPerturbation) {
  auto fs = fundamental_tensors(levi_civita(constants_from_family(FamilyId::hc3_1), kG), kH, kG);
  fs[1](0, 1, 2) += 1e-3;
  EXPECT_GT(f_relation_defect(fs, kH), 5e-4);
}

TEST(LeeForm, MatchesDiagonalContraction) {
  const Mat4 ginv = inverse(kG.real());
  for (FamilyId f : kAllFamilies) {
    const auto fs = fundamental_tensors(levi_civita(constants_from_family(f), kG), kH, kG);
    for (const auto& t : fs) {
      const Covector theta = lee_form(t, kG);
      for (std::size_t z = 0; z < 4; ++z) {
        double s = 0.0;
        for (std::size_t k = 0; k < 4; ++k) s += t(k, k, z) / kG.real()(k, k);
        EXPECT_NEAR(theta.components[z], s, 1e-14);
      }
      EXPECT_EQ(ginv(2, 2), -1.0);
      const Covector scaled = lee_form(2.5 * t, kG);
      EXPECT_LE(max_abs(scaled.components - 2.5 * theta.components), 1e-14);
    }
  }
}

TEST(Nijenhuis, AllFamiliesIntegrable) {
  for (FamilyId f : kAllFamilies) {
    const auto c = constants_from_family(f);
    for (int a = 1; a <= 3; ++a) EXPECT_LE(max_abs(nijenhuis(a, c, kH)), 1e-10) << family_name(f);
  }
}

TEST(Nijenhuis, TwoOfThreeImpliesThird) {
  // N_a is linear in the brackets; on the common kernel of N_1 and N_2, N_3 must vanish.
  const auto vars = bracket_vars();
  const auto n = static_cast<Eigen::Index>(vars.size());
  std::vector<double> cols;
  Eigen::MatrixXd a(128, n), third(64, n);
  for (Eigen::Index v = 0; v < n; ++v) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
    unit(v) = 1.0;
    const auto c = from_coordinates(unit);
    std::vector<double> col;
    append(col, nijenhuis(1, c, kH));
    append(col, nijenhuis(2, c, kH));
    for (Eigen::Index r = 0; r < 128; ++r) a(r, v) = col[static_cast<std::size_t>(r)];
    std::vector<double> col3;
    append(col3, nijenhuis(3, c, kH));
    for (Eigen::Index r = 0; r < 64; ++r) third(r, v) = col3[static_cast<std::size_t>(r)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::MatrixXd kernel = lu.kernel();
  ASSERT_GT(kernel.cols(), 0);
  EXPECT_LE((third * kernel).cwiseAbs().maxCoeff(), 1e-12);

  std::mt19937_64 rng(21);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd w(kernel.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = dist(rng);
    const auto c = from_coordinates(kernel * w);
    EXPECT_LE(max_abs(nijenhuis(1, c, kH)), 1e-12);
    EXPECT_LE(max_abs(nijenhuis(2, c, kH)), 1e-12);
    EXPECT_LE(max_abs(nijenhuis(3, c, kH)), 1e-11);
  }

  // Negative control: generic brackets are not integrable for any J_a.
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = dist(rng);
  const auto c = from_coordinates(x);
  for (int al = 1; al <= 3; ++al) EXPECT_GT(max_abs(nijenhuis(al, c, kH)), 1e-3);
}

TEST(Classify, TableMembership) {
  for (FamilyId f : kAllFamilies) {
    const auto r = classify(FamilyElement{f, {1, 1, 1, 1}}, 1e-9);
    EXPECT_TRUE(r.member_of(expected_class(f))) << family_name(f) << " finest " << r.finest_class();
    EXPECT_TRUE(r.integrable) << family_name(f);
    EXPECT_LE(r.membership_residual(expected_class(f)), 1e-9);
  }
}

TEST(Classify, FinestClasses) {
  EXPECT_EQ(classify({FamilyId::hc1, {}}, 1e-9).finest_class(), "K");
  EXPECT_EQ(classify({FamilyId::hc2, {0, 1, 0, 0}}, 1e-9).finest_class(), "HC");
  EXPECT_EQ(classify({FamilyId::hc3_1, {1, 0, 0, 0}}, 1e-9).finest_class(), "HC'");
  EXPECT_EQ(classify({FamilyId::hc3_2, {0, 0, 0, 1}}, 1e-9).finest_class(), "W0");
  // hc4.1 is also in W0; the table lists it under HC, which it satisfies too.
  const auto r41 = classify({FamilyId::hc4_1, {1, 0, 0, 0}}, 1e-9);
  EXPECT_TRUE(r41.in_hc);
  EXPECT_TRUE(r41.in_w0);
}

TEST(Classify, NonAbelianFamiliesAreNotKahler) {
  for (FamilyId f : kAllFamilies) {
    if (f == FamilyId::hc1) continue;
    const auto r = classify({f, {1, 1, 1, 1}}, 1e-9);
    EXPECT_FALSE(r.in_k) << family_name(f);
    EXPECT_GT(r.membership_residual(TableClass::K), 0.1) << family_name(f);
  }
}

TEST(Classify, ImplicationsBetweenClasses) {
  for (FamilyId f : kAllFamilies) {
    const auto r = classify({f, {1, 1, 1, 1}}, 1e-9);
    if (r.in_k) {
      EXPECT_TRUE(r.in_hc && r.in_hc_prime && r.in_w0);
    }
    if (r.in_hc_prime) {
      EXPECT_TRUE(r.kahler[0].holds);
    }
    if (r.in_w0) {
      EXPECT_TRUE(r.w1[0].holds && r.w1[1].holds);
    }
    // W1 implies W1+W2
    for (int n = 0; n < 2; ++n) {
      if (r.w1[n].holds) {
        EXPECT_TRUE(r.w1_plus_w2[n].holds) << family_name(f);
      }
    }
  }
}

TEST(Classify, IndependentOfParameters) {
  std::mt19937_64 rng(22);
  for (FamilyId f : kAllFamilies) {
    const auto base = classify({f, {1, 1, 1, 1}}, 1e-9);
    for (int n = 0; n < 5; ++n) EXPECT_EQ(classify(sample_generic(f, rng), 1e-9), base);
  }
}

TEST(Classify, RejectsNonPositiveTolerance) {
  EXPECT_THROW(classify({FamilyId::hc2, {}}, 0.0), std::invalid_argument);
  EXPECT_THROW(classify({FamilyId::hc2, {}}, -1e-9), std::invalid_argument);
}

TEST(Classify, CorruptedTripleBreaksIntegrability) {
  auto h = standard_triple();
  // swap two columns of J2 so it is no longer a complex structure compatible with the others
  h.j[1] = IntMat4{{0, 0, -1, 0}, {0, 0, 0, -1}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  const auto r = classify(constants_from_family(FamilyId::hc4_1), h, kG, 1e-9);
  EXPECT_FALSE(r.nijenhuis[1].holds);
}
