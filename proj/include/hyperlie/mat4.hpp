#pragma once

// Fixed-size 4x4 linear algebra.
//
// Indexing convention (used by every header in this library):
//   m(row, col), both 0-based. Vectors are columns, so (A * x)[r] = sum_c A(r, c) x[c]
//   and A * e_j is column j of A. Basis vector e_k of the math text is index k-1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hyperlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative evaluation does not converge.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Raised when a NaN/Inf enters an operation that requires finite input.
class NonFiniteError : public Error {
public:
  using Error::Error;
};

inline constexpr std::size_t kDim = 4;

template <typename T>
struct Vector4 {
  std::array<T, kDim> v{};

  constexpr T& operator[](std::size_t i) { return v[i]; }
  constexpr const T& operator[](std::size_t i) const { return v[i]; }

  static constexpr Vector4 basis(std::size_t k) {
    Vector4 e;
    e.v[k] = T(1);
    return e;
  }

  friend constexpr bool operator==(const Vector4&, const Vector4&) = default;

  constexpr Vector4& operator+=(const Vector4& o) {
    for (std::size_t i = 0; i < kDim; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr Vector4& operator-=(const Vector4& o) {
    for (std::size_t i = 0; i < kDim; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr Vector4& operator*=(T s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend constexpr Vector4 operator+(Vector4 a, const Vector4& b) { return a += b; }
  friend constexpr Vector4 operator-(Vector4 a, const Vector4& b) { return a -= b; }
  friend constexpr Vector4 operator-(Vector4 a) { return a *= T(-1); }
  friend constexpr Vector4 operator*(T s, Vector4 a) { return a *= s; }
  friend constexpr Vector4 operator*(Vector4 a, T s) { return a *= s; }
};

template <typename T>
struct Matrix4 {
  std::array<std::array<T, kDim>, kDim> m{};

  constexpr Matrix4() = default;
  constexpr Matrix4(std::initializer_list<std::initializer_list<T>> rows) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      std::size_t c = 0;
      for (const auto& x : row) m[r][c++] = x;
      ++r;
    }
  }

  constexpr T& operator()(std::size_t row, std::size_t col) { return m[row][col]; }
  constexpr const T& operator()(std::size_t row, std::size_t col) const { return m[row][col]; }

  static constexpr Matrix4 identity() {
    Matrix4 e;
    for (std::size_t i = 0; i < kDim; ++i) e.m[i][i] = T(1);
    return e;
  }
  static constexpr Matrix4 zero() { return Matrix4{}; }
  static constexpr Matrix4 diagonal(T a, T b, T c, T d) {
    Matrix4 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    r.m[3][3] = d;
    return r;
  }

  constexpr Vector4<T> column(std::size_t c) const {
    Vector4<T> x;
    for (std::size_t r = 0; r < kDim; ++r) x[r] = m[r][c];
    return x;
  }

  template <typename U>
  constexpr Matrix4<U> cast() const {
    Matrix4<U> r;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) r.m[i][j] = static_cast<U>(m[i][j]);
    return r;
  }

  friend constexpr bool operator==(const Matrix4&, const Matrix4&) = default;

  constexpr Matrix4& operator+=(const Matrix4& o) {
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
  constexpr Matrix4& operator-=(const Matrix4& o) {
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) m[i][j] -= o.m[i][j];
    return *this;
  }
  constexpr Matrix4& operator*=(T s) {
    for (auto& row : m)
      for (auto& x : row) x *= s;
    return *this;
  }
  friend constexpr Matrix4 operator+(Matrix4 a, const Matrix4& b) { return a += b; }
  friend constexpr Matrix4 operator-(Matrix4 a, const Matrix4& b) { return a -= b; }
  friend constexpr Matrix4 operator-(Matrix4 a) { return a *= T(-1); }
  friend constexpr Matrix4 operator*(T s, Matrix4 a) { return a *= s; }
  friend constexpr Matrix4 operator*(Matrix4 a, T s) { return a *= s; }

  friend constexpr Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k) {
        const T aik = a.m[i][k];
        for (std::size_t j = 0; j < kDim; ++j) r.m[i][j] += aik * b.m[k][j];
      }
    return r;
  }

  friend constexpr Vector4<T> operator*(const Matrix4& a, const Vector4<T>& x) {
    Vector4<T> y;
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t j = 0; j < kDim; ++j) y[i] += a.m[i][j] * x[j];
    return y;
  }
};

using Mat4 = Matrix4<double>;
using IntMat4 = Matrix4<long long>;
using Vec4 = Vector4<double>;
using IntVec4 = Vector4<long long>;

/// Coefficients c[0..4] of c0 + c1 x + ... + c4 x^4.
struct Poly4 {
  std::array<double, kDim + 1> c{};

  double operator()(double x) const {
    double y = 0.0;
    for (std::size_t i = kDim + 1; i-- > 0;) y = y * x + c[i];
    return y;
  }
  friend bool operator==(const Poly4&, const Poly4&) = default;
};

template <typename T>
constexpr Matrix4<T> mat_mul(const Matrix4<T>& a, const Matrix4<T>& b) {
  return a * b;
}

template <typename T>
constexpr Matrix4<T> transpose(const Matrix4<T>& a) {
  Matrix4<T> r;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r.m[j][i] = a.m[i][j];
  return r;
}

template <typename T>
constexpr T trace(const Matrix4<T>& a) {
  return a.m[0][0] + a.m[1][1] + a.m[2][2] + a.m[3][3];
}

template <typename T>
constexpr T dot(const Vector4<T>& a, const Vector4<T>& b) {
  T s{};
  for (std::size_t i = 0; i < kDim; ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
T max_abs(const Matrix4<T>& a) {
  T r{};
  for (const auto& row : a.m)
    for (const auto& x : row) r = std::max(r, static_cast<T>(std::abs(x)));
  return r;
}

template <typename T>
T max_abs(const Vector4<T>& a) {
  T r{};
  for (const auto& x : a.v) r = std::max(r, static_cast<T>(std::abs(x)));
  return r;
}

/// Maximum absolute row sum.
inline double norm_inf(const Mat4& a) {
  double r = 0.0;
  for (const auto& row : a.m) {
    double s = 0.0;
    for (double x : row) s += std::abs(x);
    r = std::max(r, s);
  }
  return r;
}

inline bool is_finite(const Mat4& a) {
  for (const auto& row : a.m)
    for (double x : row)
      if (!std::isfinite(x)) return false;
  return true;
}

inline bool is_finite(const Vec4& a) {
  for (double x : a.v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void require_finite(const Mat4& a, const char* where) {
  if (!is_finite(a)) throw NonFiniteError(std::string(where) + ": non-finite matrix entry");
}

/// Max-abs entrywise comparison.
inline bool approx_eq(const Mat4& a, const Mat4& b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("approx_eq: tolerance must be positive");
  return max_abs(a - b) <= tol;
}

/// Cofactor (Laplace) expansion along the first row.
template <typename T>
constexpr T determinant(const Matrix4<T>& a) {
  auto minor3 = [&](std::size_t skip_col) {
    std::array<std::size_t, 3> cols{};
    for (std::size_t c = 0, n = 0; c < kDim; ++c)
      if (c != skip_col) cols[n++] = c;
    const auto& r1 = a.m[1];
    const auto& r2 = a.m[2];
    const auto& r3 = a.m[3];
    return r1[cols[0]] * (r2[cols[1]] * r3[cols[2]] - r2[cols[2]] * r3[cols[1]]) -
           r1[cols[1]] * (r2[cols[0]] * r3[cols[2]] - r2[cols[2]] * r3[cols[0]]) +
           r1[cols[2]] * (r2[cols[0]] * r3[cols[1]] - r2[cols[1]] * r3[cols[0]]);
  };
  T det{};
  for (std::size_t c = 0; c < kDim; ++c) {
    const T term = a.m[0][c] * minor3(c);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

/// Gauss-Jordan inverse with partial pivoting. Throws Error for a singular matrix.
inline Mat4 inverse(const Mat4& a) {
  Mat4 lhs = a;
  Mat4 rhs = Mat4::identity();
  const double scale = std::max(max_abs(a), 1.0);
  for (std::size_t col = 0; col < kDim; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < kDim; ++r)
      if (std::abs(lhs(r, col)) > std::abs(lhs(piv, col))) piv = r;
    if (std::abs(lhs(piv, col)) <= 1e-14 * scale) throw Error("inverse: singular matrix");
    std::swap(lhs.m[piv], lhs.m[col]);
    std::swap(rhs.m[piv], rhs.m[col]);
    const double p = lhs(col, col);
    for (std::size_t j = 0; j < kDim; ++j) {
      lhs(col, j) /= p;
      rhs(col, j) /= p;
    }
    for (std::size_t r = 0; r < kDim; ++r) {
      if (r == col) continue;
      const double f = lhs(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < kDim; ++j) {
        lhs(r, j) -= f * lhs(col, j);
        rhs(r, j) -= f * rhs(col, j);
      }
    }
  }
  return rhs;
}

/// Monic characteristic polynomial det(x E - A) by the Faddeev-LeVerrier recursion:
///   N_0 = 0, c_4 = 1;  N_k = A N_{k-1} + c_{5-k} E,  c_{4-k} = -tr(A N_k) / k.
inline Poly4 char_poly(const Mat4& a) {
  require_finite(a, "char_poly");
  Poly4 p;
  p.c[kDim] = 1.0;
  Mat4 n = Mat4::zero();
  for (std::size_t k = 1; k <= kDim; ++k) {
    n = a * n + p.c[kDim - k + 1] * Mat4::identity();
    p.c[kDim - k] = -trace(a * n) / static_cast<double>(k);
  }
  return p;
}

inline constexpr int kMaxSeriesTerms = 64;

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
///
/// A is scaled by 2^-s until its infinity norm is below 0.5; terms are summed until the
/// term norm drops below tol times the running-sum norm. This is the reference every
/// closed-form exponential is checked against.
inline Mat4 exp_series(const Mat4& a, double tol = 1e-16) {
  if (!(tol > 0.0)) throw std::invalid_argument("exp_series: tolerance must be positive");
  require_finite(a, "exp_series");

  int squarings = 0;
  double norm = norm_inf(a);
  Mat4 scaled = a;
  while (norm >= 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  scaled *= std::ldexp(1.0, -squarings);

  Mat4 sum = Mat4::identity();
  Mat4 term = Mat4::identity();
  bool converged = false;
  for (int k = 1; k <= kMaxSeriesTerms; ++k) {
    term = term * scaled;
    term *= 1.0 / static_cast<double>(k);
    sum += term;
    if (norm_inf(term) <= tol * norm_inf(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("exp_series: Taylor series did not converge within " +
                           std::to_string(kMaxSeriesTerms) + " terms");
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix4<T>& a) {
  for (std::size_t i = 0; i < kDim; ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < kDim; ++j) os << (j ? ", " : "") << a(i, j);
    os << (i + 1 == kDim ? "]]" : "]\n");
  }
  return os;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Vector4<T>& x) {
  return os << '(' << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ')';
}

}  // namespace hyperlie
