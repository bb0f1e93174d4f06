#pragma once

// The standard hypercomplex triple (J1, J2, J3) on R^4 and the neutral metric
// g = diag(1, 1, -1, -1). J1 is an isometry of g, J2 and J3 are anti-isometries.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

#include "hyperlie/mat4.hpp"

namespace hyperlie {

struct HypercomplexTriple {
  std::array<IntMat4, 3> j;     // j[alpha - 1]
  std::array<int, 3> eps{};     // eps[alpha - 1]

  const IntMat4& operator[](int alpha) const { return j.at(static_cast<std::size_t>(alpha - 1)); }
  IntMat4& operator[](int alpha) { return j.at(static_cast<std::size_t>(alpha - 1)); }
  int epsilon(int alpha) const { return eps.at(static_cast<std::size_t>(alpha - 1)); }
  Mat4 real(int alpha) const { return (*this)[alpha].cast<double>(); }
};

struct NeutralMetric {
  IntMat4 gram = IntMat4::diagonal(1, 1, -1, -1);

  Mat4 real() const { return gram.cast<double>(); }
};

inline void check_alpha(int alpha) {
  if (alpha < 1 || alpha > 3) throw std::out_of_range("structure index alpha must be 1, 2 or 3");
}

/// Cyclic successors: for alpha the pair (beta, gamma) with (alpha, beta, gamma) a cyclic
/// permutation of (1, 2, 3).
inline constexpr int next_alpha(int alpha) { return alpha % 3 + 1; }

/// J_alpha acting on the standard basis, column j holding J_alpha e_{j+1}:
///   J1: e1->e2,  e2->-e1, e3->-e4, e4->e3
///   J2: e1->e3,  e2->e4,  e3->-e1, e4->-e2
///   J3: e1->-e4, e2->e3,  e3->-e2, e4->e1
inline HypercomplexTriple standard_triple() {
  HypercomplexTriple h;
  struct Image {
    std::size_t from, to;
    long long sign;
  };
  const std::array<std::array<Image, 4>, 3> table = {{
      {{{0, 1, 1}, {1, 0, -1}, {2, 3, -1}, {3, 2, 1}}},
      {{{0, 2, 1}, {1, 3, 1}, {2, 0, -1}, {3, 1, -1}}},
      {{{0, 3, -1}, {1, 2, 1}, {2, 1, -1}, {3, 0, 1}}},
  }};
  for (std::size_t a = 0; a < 3; ++a)
    for (const auto& img : table[a]) h.j[a](img.to, img.from) = img.sign;
  h.eps = {1, -1, -1};
  return h;
}

inline NeutralMetric neutral_metric() { return {}; }

inline double metric_eval(const NeutralMetric& g, const Vec4& x, const Vec4& y) {
  return dot(x, g.real() * y);
}

/// g_alpha(x, y) = g(J_alpha x, y)
inline double associated_form(const HypercomplexTriple& h, const NeutralMetric& g, int alpha, const Vec4& x,
                              const Vec4& y) {
  check_alpha(alpha);
  return metric_eval(g, h.real(alpha) * x, y);
}

inline double associated_form(int alpha, const Vec4& x, const Vec4& y) {
  return associated_form(standard_triple(), neutral_metric(), alpha, x, y);
}

/// Gram matrix of g_alpha: entry (i, j) = g(J e_i, e_j) = (J^T G)(i, j).
inline IntMat4 associated_form_matrix(const HypercomplexTriple& h, const NeutralMetric& g, int alpha) {
  check_alpha(alpha);
  return transpose(h[alpha]) * g.gram;
}

/// max over basis pairs of |g(x, y) - eps_alpha g(J x, J y)|, in exact integer arithmetic.
inline long long compatibility_defect(const HypercomplexTriple& h, const NeutralMetric& g, int alpha) {
  check_alpha(alpha);
  const IntMat4& jm = h[alpha];
  const IntMat4 pulled = transpose(jm) * g.gram * jm;
  return max_abs(g.gram - static_cast<long long>(h.epsilon(alpha)) * pulled);
}

inline long long compatibility_defect(int alpha) {
  return compatibility_defect(standard_triple(), neutral_metric(), alpha);
}

/// Largest entry violated among J_a^2 = -E and J_a = J_b J_c = -J_c J_b over the cyclic
/// permutations (a, b, c). Zero iff the triple is hypercomplex as an algebra.
inline long long quaternion_defect(const HypercomplexTriple& h) {
  const IntMat4 e = IntMat4::identity();
  long long r = 0;
  for (int a = 1; a <= 3; ++a) {
    const int b = next_alpha(a), c = next_alpha(b);
    r = std::max(r, max_abs(h[a] * h[a] + e));
    r = std::max(r, max_abs(h[b] * h[c] - h[a]));
    r = std::max(r, max_abs(h[c] * h[b] + h[a]));
  }
  return r;
}

/// max over alpha != beta of |J_a J_b + J_b J_a|
inline long long anticommutation_defect(const HypercomplexTriple& h) {
  long long r = 0;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      if (a != b) r = std::max(r, max_abs(h[a] * h[b] + h[b] * h[a]));
  return r;
}

}  // namespace hyperlie
