#pragma once

// Structure constants of a 4-dimensional real Lie algebra and the diagnostics built on them.
//
// Convention: C(k, l, s) is the coefficient of e_s in [e_k, e_l] (0-based indices).
// Basis matrices follow (M_k)(row l, col s) = -C(k, l, s); this orientation is the one
// that reproduces the printed hc2 matrices M_2, M_3, M_4.
//
// Only hc2 has brackets stated in closed form in the source material. For every other
// family the brackets are *defined* here as those recovered from the generator layout:
// M_k = dA/d(param_k), then C(k,l,s) = -M_k(l,s).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hyperlie/families.hpp"
#include "hyperlie/mat4.hpp"

namespace hyperlie {

/// Raised when recovered constants fail antisymmetry or Jacobi (a transcription bug).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

struct StructureConstants {
  std::array<double, kDim * kDim * kDim> values{};

  double& operator()(std::size_t k, std::size_t l, std::size_t s) { return values[(k * kDim + l) * kDim + s]; }
  double operator()(std::size_t k, std::size_t l, std::size_t s) const {
    return values[(k * kDim + l) * kDim + s];
  }

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;
};

/// [x, y]^s = sum_{k,l} C(k,l,s) x^k y^l
inline Vec4 bracket(const StructureConstants& c, const Vec4& x, const Vec4& y) {
  Vec4 r;
  for (std::size_t k = 0; k < kDim; ++k) {
    if (x[k] == 0.0) continue;
    for (std::size_t l = 0; l < kDim; ++l) {
      const double w = x[k] * y[l];
      if (w == 0.0) continue;
      for (std::size_t s = 0; s < kDim; ++s) r[s] += c(k, l, s) * w;
    }
  }
  return r;
}

inline double antisymmetry_defect(const StructureConstants& c) {
  double r = 0.0;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = 0; l < kDim; ++l)
      for (std::size_t s = 0; s < kDim; ++s) r = std::max(r, std::abs(c(k, l, s) + c(l, k, s)));
  return r;
}

/// max over (i,j,k,s) of |sum_m C(i,j,m)C(m,k,s) + C(j,k,m)C(m,i,s) + C(k,i,m)C(m,j,s)|
inline double jacobi_defect(const StructureConstants& c) {
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t s = 0; s < kDim; ++s) {
          double sum = 0.0;
          for (std::size_t m = 0; m < kDim; ++m)
            sum += c(i, j, m) * c(m, k, s) + c(j, k, m) * c(m, i, s) + c(k, i, m) * c(m, j, s);
          r = std::max(r, std::abs(sum));
        }
  return r;
}

inline std::array<Mat4, kDim> basis_matrices(const StructureConstants& c) {
  std::array<Mat4, kDim> m;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = 0; l < kDim; ++l)
      for (std::size_t s = 0; s < kDim; ++s) m[k](l, s) = -c(k, l, s);
  return m;
}

inline StructureConstants constants_from_matrices(const std::array<Mat4, kDim>& m) {
  StructureConstants c;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = 0; l < kDim; ++l)
      for (std::size_t s = 0; s < kDim; ++s) c(k, l, s) = -m[k](l, s);
  return c;
}

/// max over (i,j) of |[M_i, M_j] - sign * sum_k C(i,j,k) M_k|. A zero defect for
/// sign = +1 means e_k -> M_k is a homomorphism, for sign = -1 an anti-homomorphism.
inline double representation_defect(const StructureConstants& c, double sign) {
  const auto m = basis_matrices(c);
  double r = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      Mat4 diff = m[i] * m[j] - m[j] * m[i];
      for (std::size_t k = 0; k < kDim; ++k) diff -= (sign * c(i, j, k)) * m[k];
      r = std::max(r, max_abs(diff));
    }
  return r;
}

inline constexpr double kJacobiTol = 1e-12;

/// Basis matrices M_k = A(e_k) - A(0), exact because every layout is linear in (a,b,c,d).
inline std::array<Mat4, kDim> family_basis_matrices(FamilyId f) {
  const Mat4 base = generator({f, {0, 0, 0, 0}});
  std::array<Mat4, kDim> m;
  for (std::size_t k = 0; k < kDim; ++k) {
    FamilyElement unit{f, {0, 0, 0, 0}};
    unit.params[k] = 1.0;
    m[k] = generator(unit) - base;
  }
  return m;
}

inline StructureConstants constants_from_family(FamilyId f) {
  const StructureConstants c = constants_from_matrices(family_basis_matrices(f));
  const double anti = antisymmetry_defect(c);
  const double jac = jacobi_defect(c);
  if (anti > kJacobiTol || jac > kJacobiTol)
    throw ConsistencyError("constants_from_family(" + std::string(family_name(f)) +
                           "): antisymmetry defect " + std::to_string(anti) + ", Jacobi defect " +
                           std::to_string(jac));
  return c;
}

struct Subspace {
  std::vector<Vec4> basis;

  std::size_t dim() const { return basis.size(); }
};

inline constexpr double kRankTol = 1e-9;

namespace detail {

using Row = std::array<double, kDim>;

struct Echelon {
  std::vector<Row> rows;  // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with partial pivoting; entries below
/// kRankTol * (largest input entry) count as zero.
inline Echelon row_reduce(std::vector<Row> a) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  Echelon out;
  if (scale == 0.0) return out;
  const double tol = kRankTol * scale;

  std::size_t r = 0;
  for (std::size_t col = 0; col < kDim && r < a.size(); ++col) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < a.size(); ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    if (std::abs(a[piv][col]) <= tol) continue;
    std::swap(a[piv], a[r]);
    const double p = a[r][col];
    for (double& x : a[r]) x /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < kDim; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rows.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

inline Subspace null_space(const std::vector<Row>& equations) {
  const Echelon e = row_reduce(equations);
  Subspace out;
  for (std::size_t free = 0; free < kDim; ++free) {
    if (std::find(e.pivots.begin(), e.pivots.end(), free) != e.pivots.end()) continue;
    Vec4 v;
    v[free] = 1.0;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][free];
    out.basis.push_back(v);
  }
  return out;
}

inline Subspace row_space(const std::vector<Row>& rows) {
  const Echelon e = row_reduce(rows);
  Subspace out;
  for (const auto& row : e.rows) out.basis.push_back(Vec4{row});
  return out;
}

}  // namespace detail

inline std::size_t rank(const std::vector<Vec4>& vectors) {
  std::vector<detail::Row> rows;
  for (const auto& v : vectors) rows.push_back(v.v);
  return detail::row_reduce(rows).rows.size();
}

/// True when v lies in span(sub) under the rank tolerance.
inline bool contains(const Subspace& sub, const Vec4& v) {
  if (max_abs(v) == 0.0) return true;
  std::vector<Vec4> ext = sub.basis;
  ext.push_back(v);
  return rank(ext) == rank(sub.basis);
}

/// {x : [x, e_l] = 0 for all l}, i.e. the null space of the 16x4 system
/// sum_k C(k,l,s) x^k = 0 over all (l, s).
inline Subspace center(const StructureConstants& c) {
  std::vector<detail::Row> eqs;
  for (std::size_t l = 0; l < kDim; ++l)
    for (std::size_t s = 0; s < kDim; ++s) {
      detail::Row row{};
      for (std::size_t k = 0; k < kDim; ++k) row[k] = c(k, l, s);
      eqs.push_back(row);
    }
  return detail::null_space(eqs);
}

/// span{[e_k, e_l] : k < l}
inline Subspace derived_algebra(const StructureConstants& c) {
  std::vector<detail::Row> rows;
  for (std::size_t k = 0; k < kDim; ++k)
    for (std::size_t l = k + 1; l < kDim; ++l)
      rows.push_back(bracket(c, Vec4::basis(k), Vec4::basis(l)).v);
  return detail::row_space(rows);
}

/// Eigenvalues of a symmetric n x n matrix (n <= 4) by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::array<std::array<double, kDim>, kDim> a, std::size_t n) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = cs * akp - sn * akq;
          a[k][q] = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = cs * apk - sn * aqk;
          a[q][k] = sn * apk + cs * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of the Gram matrix B^T G B of `gram` restricted to `sub`. Eigenvalues with
/// |lambda| <= 1e-9 * max(1, max |lambda|) count as zero.
inline Signature signature_on(const Subspace& sub, const Mat4& gram) {
  const std::size_t n = sub.dim();
  std::array<std::array<double, kDim>, kDim> restricted{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) restricted[i][j] = dot(sub.basis[i], gram * sub.basis[j]);
  const auto ev = symmetric_eigenvalues(restricted, n);
  double scale = 1.0;
  for (double x : ev) scale = std::max(scale, std::abs(x));
  Signature sig;
  for (double x : ev) {
    if (std::abs(x) <= kRankTol * scale)
      ++sig.zero;
    else if (x > 0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

}  // namespace hyperlie
