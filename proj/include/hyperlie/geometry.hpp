#pragma once

// Left-invariant tensor calculus on a 4-dimensional Lie algebra with a constant metric:
// Levi-Civita connection, fundamental tensors F_alpha, Lee forms, Nijenhuis tensors and
// the class predicates used to place a hypercomplex structure in its class.
//
// Every frame field is left-invariant, so derivatives of constant coefficients vanish and
// all tensors are evaluated on basis vectors e_0..e_3.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string_view>

#include "hyperlie/families.hpp"
#include "hyperlie/hypercomplex.hpp"
#include "hyperlie/lie_algebra.hpp"
#include "hyperlie/mat4.hpp"

namespace hyperlie {

/// T(i, j, k) = T(e_i, e_j, e_k)
struct Tensor3 {
  std::array<double, kDim * kDim * kDim> values{};

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return values[(i * kDim + j) * kDim + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return values[(i * kDim + j) * kDim + k]; }

  /// Multilinear evaluation on arbitrary vectors.
  double operator()(const Vec4& x, const Vec4& y, const Vec4& z) const {
    double s = 0.0;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        for (std::size_t k = 0; k < kDim; ++k) s += (*this)(i, j, k) * x[i] * y[j] * z[k];
    return s;
  }

  Tensor3& operator*=(double s) {
    for (double& x : values) x *= s;
    return *this;
  }
  friend Tensor3 operator*(double s, Tensor3 t) { return t *= s; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) {
    for (std::size_t n = 0; n < a.values.size(); ++n) a.values[n] -= b.values[n];
    return a;
  }
};

inline double max_abs(const Tensor3& t) {
  double r = 0.0;
  for (double x : t.values) r = std::max(r, std::abs(x));
  return r;
}

/// Gamma(i, j, k) = coefficient of e_k in nabla_{e_i} e_j
struct ConnectionCoefficients {
  Tensor3 gamma;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return gamma(i, j, k); }

  /// nabla_{e_i} v for a left-invariant field v
  Vec4 derivative(std::size_t i, const Vec4& v) const {
    Vec4 r;
    for (std::size_t j = 0; j < kDim; ++j) {
      if (v[j] == 0.0) continue;
      for (std::size_t k = 0; k < kDim; ++k) r[k] += v[j] * gamma(i, j, k);
    }
    return r;
  }
};

struct Covector {
  Vec4 components;

  double operator()(const Vec4& x) const { return dot(components, x); }
};

/// N(i, j) = N(e_i, e_j), a vector.
using VectorTensor2 = std::array<std::array<Vec4, kDim>, kDim>;

inline double max_abs(const VectorTensor2& n) {
  double r = 0.0;
  for (const auto& row : n)
    for (const auto& v : row) r = std::max(r, max_abs(v));
  return r;
}

/// Koszul formula for left-invariant fields and a constant metric:
///   2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)
/// solved for Gamma through the inverse Gram matrix. Throws Error for a singular metric.
/// Assumes jacobi_defect(c) is negligible.
inline ConnectionCoefficients levi_civita(const StructureConstants& c, const Mat4& gram) {
  if (determinant(gram) == 0.0) throw Error("levi_civita: singular Gram matrix");
  const Mat4 ginv = inverse(gram);
  // b(i, j, k) = g([e_i, e_j], e_k)
  Tensor3 b;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < kDim; ++m) s += c(i, j, m) * gram(m, k);
        b(i, j, k) = s;
      }
  ConnectionCoefficients out;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < kDim; ++m)
          s += 0.5 * (b(i, j, m) - b(j, m, i) + b(m, i, j)) * ginv(m, k);
        out.gamma(i, j, k) = s;
      }
  return out;
}

inline ConnectionCoefficients levi_civita(const StructureConstants& c, const NeutralMetric& g) {
  return levi_civita(c, g.real());
}

/// max |Gamma(i,j,s) - Gamma(j,i,s) - C(i,j,s)|
inline double torsion_defect(const ConnectionCoefficients& con, const StructureConstants& c) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t s = 0; s < kDim; ++s)
        r = std::max(r, std::abs(con(i, j, s) - con(j, i, s) - c(i, j, s)));
  return r;
}

/// max |g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k)|
inline double metric_compatibility_defect(const ConnectionCoefficients& con, const Mat4& gram) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < kDim; ++m) s += con(i, j, m) * gram(m, k) + con(i, k, m) * gram(j, m);
        r = std::max(r, std::abs(s));
      }
  return r;
}

/// F_alpha(e_i, e_j, e_k) = g(nabla_{e_i}(J e_j) - J nabla_{e_i} e_j, e_k)
inline Tensor3 fundamental_tensor(int alpha, const ConnectionCoefficients& con, const HypercomplexTriple& h,
                                  const NeutralMetric& g) {
  check_alpha(alpha);
  const Mat4 jm = h.real(alpha);
  const Mat4 gram = g.real();
  Tensor3 f;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      const Vec4 w = con.derivative(i, jm.column(j)) - jm * con.derivative(i, Vec4::basis(j));
      const Vec4 lowered = transpose(gram) * w;
      for (std::size_t k = 0; k < kDim; ++k) f(i, j, k) = lowered[k];
    }
  return f;
}

inline std::array<Tensor3, 3> fundamental_tensors(const ConnectionCoefficients& con, const HypercomplexTriple& h,
                                                  const NeutralMetric& g) {
  return {fundamental_tensor(1, con, h, g), fundamental_tensor(2, con, h, g), fundamental_tensor(3, con, h, g)};
}

/// theta(z) = g^{kl} F(e_k, e_l, z)
inline Covector lee_form(const Tensor3& f, const NeutralMetric& g) {
  const Mat4 ginv = inverse(g.real());
  Covector theta;
  for (std::size_t z = 0; z < kDim; ++z)
    for (std::size_t k = 0; k < kDim; ++k)
      for (std::size_t l = 0; l < kDim; ++l) theta.components[z] += ginv(k, l) * f(k, l, z);
  return theta;
}

/// N(x, y) = [Jx, Jy] - J[Jx, y] - J[x, Jy] - [x, y]
inline VectorTensor2 nijenhuis(int alpha, const StructureConstants& c, const HypercomplexTriple& h) {
  check_alpha(alpha);
  const Mat4 jm = h.real(alpha);
  VectorTensor2 n{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      const Vec4 x = Vec4::basis(i), y = Vec4::basis(j);
      const Vec4 jx = jm * x, jy = jm * y;
      n[i][j] = bracket(c, jx, jy) - jm * bracket(c, jx, y) - jm * bracket(c, x, jy) - bracket(c, x, y);
    }
  return n;
}

struct FSymmetryDefects {
  double skew = 0.0;        // max |F(x,y,z) + eps F(x,z,y)|
  double j_invariant = 0.0; // max |F(x,y,z) + eps F(x,Jy,Jz)|
};

inline FSymmetryDefects f_symmetry_defects(int alpha, const Tensor3& f, const HypercomplexTriple& h) {
  check_alpha(alpha);
  const Mat4 jm = h.real(alpha);
  const double eps = h.epsilon(alpha);
  FSymmetryDefects d;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Vec4 x = Vec4::basis(i), y = Vec4::basis(j), z = Vec4::basis(k);
        d.skew = std::max(d.skew, std::abs(f(i, j, k) + eps * f(i, k, j)));
        d.j_invariant = std::max(d.j_invariant, std::abs(f(i, j, k) + eps * f(x, jm * y, jm * z)));
      }
  return d;
}

/// Which sign multiplies the second term of the cyclic relation
///   F_a(x,y,z) = F_b(x, J_c y, z) - eps * F_c(x, y, J_b z).
/// Differentiating J_a = J_b J_c gives eps = eps_b; the printed form uses eps_a, which
/// differs from eps_b when a = 1 or a = 3.
enum class FRelationSign { beta, alpha_printed };

/// max over basis triples and cyclic (a, b, c) of the relation residual.
inline double f_relation_defect(const std::array<Tensor3, 3>& f, const HypercomplexTriple& h,
                                FRelationSign sign = FRelationSign::beta) {
  double r = 0.0;
  for (int a = 1; a <= 3; ++a) {
    const int b = next_alpha(a), c = next_alpha(b);
    const Mat4 jb = h.real(b), jc = h.real(c);
    const double eps = sign == FRelationSign::beta ? h.epsilon(b) : h.epsilon(a);
    const Tensor3& fa = f[a - 1];
    const Tensor3& fb = f[b - 1];
    const Tensor3& fc = f[c - 1];
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j)
        for (std::size_t k = 0; k < kDim; ++k) {
          const Vec4 x = Vec4::basis(i), y = Vec4::basis(j), z = Vec4::basis(k);
          const double rhs = fb(x, jc * y, z) - eps * fc(x, y, jb * z);
          r = std::max(r, std::abs(fa(i, j, k) - rhs));
        }
  }
  return r;
}

inline double f_relation_defect(const StructureConstants& c, const HypercomplexTriple& h, const NeutralMetric& g,
                                FRelationSign sign = FRelationSign::beta) {
  return f_relation_defect(fundamental_tensors(levi_civita(c, g), h, g), h, sign);
}

// ---------------------------------------------------------------------------------------
// Classification

enum class TableClass { K, HC, HC_prime, W0 };

inline std::string_view class_name(TableClass c) {
  switch (c) {
    case TableClass::K: return "K";
    case TableClass::HC: return "HC";
    case TableClass::HC_prime: return "HC'";
    case TableClass::W0: return "W0";
  }
  return "?";
}

/// The class each family is listed under in the published correspondence table.
inline TableClass expected_class(FamilyId f) {
  switch (f) {
    case FamilyId::hc1: return TableClass::K;
    case FamilyId::hc2: return TableClass::HC;
    case FamilyId::hc3_1: return TableClass::HC_prime;
    case FamilyId::hc3_2: return TableClass::W0;
    case FamilyId::hc4_1: return TableClass::HC;
    case FamilyId::hc4_2: return TableClass::W0;
    case FamilyId::hc5_1: return TableClass::HC;
    case FamilyId::hc5_2: return TableClass::HC;
  }
  return TableClass::HC;
}

struct Predicate {
  double residual = 0.0;
  bool holds = false;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Residuals are maxima of absolute values over all basis index combinations.
///
///   kahler[a]        F_a = 0                                            (W0(J_a))
///   w2_j1            S F_1(x,y,z) = 0, S the cyclic sum over x,y,z      (W2(J1))
///   w4_j1            F_1 = 1/2 {g(x,y)t(z) - g(x,J1y)t(J1z)
///                               - g(x,z)t(y) + g(x,J1z)t(J1y)}, t = theta_1  (W4(J1))
///   w1[n]            F_a = 1/4 {g(x,y)t(z) + g(x,Jy)t(Jz)
///                               + g(x,z)t(y) + g(x,Jz)t(Jy)}, a = n + 2  (W1(J_a))
///   w2[n]            max(|S F_a(x,y,J_a z)|, |theta_a|)                 (W2(J_a))
///   w3[n]            S F_a(x,y,z) = 0                                   (W3(J_a))
///   w1_plus_w2[n]    with P the W1-expression above, R = F_a - P must satisfy the W2
///                    conditions: max(|S R(x,y,J_a z)|, |g^{kl} R(e_k,e_l,.)|)  ((W1+W2)(J_a))
///   nijenhuis[a]     max-abs of [J_a, J_a]
///   closed_lee_form  d(theta_1 o J1) = 0, with d w(x,y) = -w([x,y]) on left-invariant forms
struct ClassificationReport {
  double tolerance = 0.0;
  std::array<Predicate, 3> kahler{};
  Predicate w2_j1;
  Predicate w4_j1;
  std::array<Predicate, 2> w1{};
  std::array<Predicate, 2> w2{};
  std::array<Predicate, 2> w3{};
  std::array<Predicate, 2> w1_plus_w2{};
  std::array<Predicate, 3> nijenhuis{};
  Predicate closed_lee_form;
  std::array<Vec4, 3> lee_forms{};

  bool in_k = false;
  bool in_hc = false;
  bool in_hc_prime = false;
  bool in_w0 = false;
  bool integrable = false;

  bool member_of(TableClass c) const {
    switch (c) {
      case TableClass::K: return in_k;
      case TableClass::HC: return in_hc;
      case TableClass::HC_prime: return in_hc_prime;
      case TableClass::W0: return in_w0;
    }
    return false;
  }

  /// Largest residual among the predicates defining class c.
  double membership_residual(TableClass c) const {
    switch (c) {
      case TableClass::K: return std::max({kahler[0].residual, kahler[1].residual, kahler[2].residual});
      case TableClass::HC: return std::max({w4_j1.residual, w1_plus_w2[0].residual, w1_plus_w2[1].residual});
      case TableClass::HC_prime:
        return std::max({kahler[0].residual, w1_plus_w2[0].residual, w1_plus_w2[1].residual});
      case TableClass::W0:
        return std::max({w4_j1.residual, w1[0].residual, w1[1].residual, closed_lee_form.residual});
    }
    return 0.0;
  }

  /// Smallest of the listed classes containing the structure ("none" if none does).
  std::string_view finest_class() const {
    if (in_k) return "K";
    if (in_hc_prime && in_w0) return "HC'&W0";
    if (in_hc_prime) return "HC'";
    if (in_w0) return "W0";
    if (in_hc) return "HC";
    return "none";
  }

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

namespace detail {

inline Predicate predicate(double residual, double tol) { return {residual, residual <= tol}; }

/// 1/4 {g(x,y)t(z) + g(x,Jy)t(Jz) + g(x,z)t(y) + g(x,Jz)t(Jy)} on the basis
inline Tensor3 w1_part(const Covector& theta, const Mat4& jm, const Mat4& gram) {
  Tensor3 p;
  auto g = [&](const Vec4& x, const Vec4& y) { return dot(x, gram * y); };
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Vec4 x = Vec4::basis(i), y = Vec4::basis(j), z = Vec4::basis(k);
        p(i, j, k) = 0.25 * (g(x, y) * theta(z) + g(x, jm * y) * theta(jm * z) + g(x, z) * theta(y) +
                             g(x, jm * z) * theta(jm * y));
      }
  return p;
}

/// max |S T(x, y, J z)| over basis triples
inline double cyclic_j_residual(const Tensor3& t, const Mat4& jm) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Vec4 x = Vec4::basis(i), y = Vec4::basis(j), z = Vec4::basis(k);
        r = std::max(r, std::abs(t(x, y, jm * z) + t(y, z, jm * x) + t(z, x, jm * y)));
      }
  return r;
}

inline double cyclic_residual(const Tensor3& t) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) r = std::max(r, std::abs(t(i, j, k) + t(j, k, i) + t(k, i, j)));
  return r;
}

}  // namespace detail

/// Evaluates every class predicate for the Lie algebra `c` with structure `h` and metric `g`.
inline ClassificationReport classify(const StructureConstants& c, const HypercomplexTriple& h,
                                     const NeutralMetric& g, double tol) {
  using detail::predicate;
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tolerance must be positive");
  const Mat4 gram = g.real();
  const auto con = levi_civita(c, gram);
  const auto f = fundamental_tensors(con, h, g);
  std::array<Covector, 3> theta{lee_form(f[0], g), lee_form(f[1], g), lee_form(f[2], g)};

  ClassificationReport r;
  r.tolerance = tol;
  for (int a = 0; a < 3; ++a) {
    r.kahler[a] = predicate(max_abs(f[a]), tol);
    r.nijenhuis[a] = predicate(max_abs(nijenhuis(a + 1, c, h)), tol);
    r.lee_forms[a] = theta[a].components;
  }

  const Mat4 j1 = h.real(1);
  auto gv = [&](const Vec4& x, const Vec4& y) { return dot(x, gram * y); };
  double w4 = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const Vec4 x = Vec4::basis(i), y = Vec4::basis(j), z = Vec4::basis(k);
        const Covector& t = theta[0];
        const double rhs =
            0.5 * (gv(x, y) * t(z) - gv(x, j1 * y) * t(j1 * z) - gv(x, z) * t(y) + gv(x, j1 * z) * t(j1 * y));
        w4 = std::max(w4, std::abs(f[0](i, j, k) - rhs));
      }
  r.w2_j1 = predicate(detail::cyclic_residual(f[0]), tol);
  r.w4_j1 = predicate(w4, tol);

  for (int n = 0; n < 2; ++n) {
    const int a = n + 2;
    const Mat4 jm = h.real(a);
    const Tensor3& fa = f[a - 1];
    const Tensor3 part = detail::w1_part(theta[a - 1], jm, gram);
    const Tensor3 rest = fa - part;
    r.w1[n] = predicate(max_abs(fa - part), tol);
    r.w2[n] = predicate(std::max(detail::cyclic_j_residual(fa, jm), max_abs(theta[a - 1].components)), tol);
    r.w3[n] = predicate(detail::cyclic_residual(fa), tol);
    r.w1_plus_w2[n] =
        predicate(std::max(detail::cyclic_j_residual(rest, jm), max_abs(lee_form(rest, g).components)), tol);
  }

  // w = theta_1 o J1, dw(e_i, e_j) = -w([e_i, e_j])
  double dw = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      dw = std::max(dw, std::abs(theta[0](j1 * bracket(c, Vec4::basis(i), Vec4::basis(j)))));
  r.closed_lee_form = predicate(dw, tol);

  r.in_k = r.kahler[0].holds && r.kahler[1].holds && r.kahler[2].holds;
  const bool hc_tail = r.w1_plus_w2[0].holds && r.w1_plus_w2[1].holds;
  r.in_hc = r.w4_j1.holds && hc_tail;
  r.in_hc_prime = r.kahler[0].holds && hc_tail;
  r.in_w0 = r.w4_j1.holds && r.w1[0].holds && r.w1[1].holds && r.closed_lee_form.holds;
  r.integrable = r.nijenhuis[0].holds && r.nijenhuis[1].holds && r.nijenhuis[2].holds;
  return r;
}

/// Classifies the family's Lie algebra with the standard triple and neutral metric. The
/// parameters select an element of the algebra and do not change the brackets.
inline ClassificationReport classify(const FamilyElement& e, double tol) {
  return classify(constants_from_family(e.family), standard_triple(), neutral_metric(), tol);
}

}  // namespace hyperlie
