#pragma once

// The explicit matrix groups G6, G8 and G10 and their identification with one-parameter
// images E + tA + uA^2 of the hc4.1, hc3.2 and hc5.1 generators.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperlie/families.hpp"
#include "hyperlie/mat4.hpp"

namespace hyperlie {

enum class GroupId { G6, G8, G10 };

inline std::string_view group_name(GroupId g) {
  switch (g) {
    case GroupId::G6: return "G6";
    case GroupId::G8: return "G8";
    case GroupId::G10: return "G10";
  }
  return "?";
}

/// Parameters (x, y, z, w, v); v is used by G10 only.
struct GroupParams {
  GroupId group = GroupId::G6;
  std::array<double, 5> p{};

  double x() const { return p[0]; }
  double y() const { return p[1]; }
  double z() const { return p[2]; }
  double w() const { return p[3]; }
  double v() const { return p[4]; }
};

inline Mat4 element(const GroupParams& gp) {
  const double x = gp.x(), y = gp.y(), z = gp.z(), w = gp.w(), v = gp.v();
  switch (gp.group) {
    case GroupId::G6:
      return Mat4{{1, x, 0.5 * x * x, y}, {0, 1, x, z}, {0, 0, 1, w}, {0, 0, 0, 1}};
    case GroupId::G8: {
      const double c = std::cos(x), s = std::sin(x);
      return Mat4{{c, s, 0, y}, {-s, c, 0, z}, {z * c + y * s, z * s - y * c, 1, w}, {0, 0, 0, 1}};
    }
    case GroupId::G10:
      return Mat4{{1, x, y, z}, {0, 1, w, v}, {0, 0, 1, w}, {0, 0, 0, 1}};
  }
  throw std::invalid_argument("element: unknown group");
}

/// Recovers parameters from designated entries (0-based (row, col)):
///   G6:  x (0,1), y (0,3), z (1,3), w (2,3)
///   G8:  x = atan2((0,1), (0,0)), y (0,3), z (1,3), w (2,3)
///   G10: x (0,1), y (0,2), z (0,3), w (1,2), v (1,3)
inline GroupParams read_off(GroupId g, const Mat4& m) {
  GroupParams gp{g, {}};
  switch (g) {
    case GroupId::G6:
      gp.p = {m(0, 1), m(0, 3), m(1, 3), m(2, 3), 0.0};
      break;
    case GroupId::G8:
      gp.p = {std::atan2(m(0, 1), m(0, 0)), m(0, 3), m(1, 3), m(2, 3), 0.0};
      break;
    case GroupId::G10:
      gp.p = {m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3)};
      break;
  }
  return gp;
}

/// max-abs distance from m to the group element rebuilt from its read-off parameters.
inline double distance_to_group(GroupId g, const Mat4& m) { return max_abs(m - element(read_off(g, m))); }

inline double closure_defect(GroupId g, const GroupParams& p1, const GroupParams& p2) {
  if (p1.group != g || p2.group != g) throw std::invalid_argument("closure_defect: parameter group mismatch");
  return distance_to_group(g, element(p1) * element(p2));
}

/// How the family side of an embedding is built.
///   stated_coefficients: E + tA + uA^2 with the (t, u) used in the embedding argument
///   exponential:         the actual e^A from exp_closed_form
enum class EmbeddingMode { stated_coefficients, exponential };

struct EmbeddingCandidate {
  std::string label;
  GroupParams params;
  double residual = 0.0;
};

struct EmbeddingReport {
  FamilyId family = FamilyId::hc4_1;
  GroupId group = GroupId::G6;
  EmbeddingMode mode = EmbeddingMode::stated_coefficients;
  FamilyElement element;
  double t = 1.0;
  double u = 0.0;
  Mat4 target;
  std::vector<EmbeddingCandidate> candidates;  // [0] is the stated substitution, [1] the best fit
  double best_residual = 0.0;
  // G8 only: the stated angle misses while the best-fit angle matches
  bool angle_discrepancy = false;
  std::string note;
};

inline constexpr double kEmbeddingTol = 1e-12;

/// Builds the family side with the stated substitutions and compares it with the stated
/// group element and with the best-fit element from read_off.
///
///   hc4.1 -> G6:  a = b = c = 0, d = free, (t,u) = (1,0); stated G6(x=z=w=0, y=d)
///   hc5.1 -> G10: a = c = d = 0, b = free, (t,u) = (1,0); stated G10(x=b, rest 0)
///   hc3.2 -> G8:  a = b = 0, c = -d, d = free, (t,u) = (1,0); stated x = 3pi/2
inline EmbeddingReport embedding_check(FamilyId family, EmbeddingMode mode, double free_value) {
  EmbeddingReport r;
  r.family = family;
  r.mode = mode;
  GroupParams stated;
  switch (family) {
    case FamilyId::hc4_1:
      r.group = GroupId::G6;
      r.element = {family, {0, 0, 0, free_value}};
      stated = {GroupId::G6, {0, free_value, 0, 0, 0}};
      break;
    case FamilyId::hc5_1:
      r.group = GroupId::G10;
      r.element = {family, {0, free_value, 0, 0}};
      stated = {GroupId::G10, {free_value, 0, 0, 0, 0}};
      break;
    case FamilyId::hc3_2:
      r.group = GroupId::G8;
      r.element = {family, {0, 0, -free_value, free_value}};
      stated = {GroupId::G8, {1.5 * std::numbers::pi, 0, 0, 0, 0}};
      break;
    default:
      throw std::invalid_argument("embedding_check: only hc4.1, hc3.2 and hc5.1 have a group embedding");
  }

  const Mat4 a = generator(r.element);
  if (mode == EmbeddingMode::stated_coefficients) {
    r.t = 1.0;
    r.u = 0.0;
    r.target = Mat4::identity() + a;
  } else {
    const ExpResult ex = exp_closed_form(r.element);
    r.t = ex.coefficients.t;
    r.u = ex.coefficients.u;
    r.target = ex.matrix;
  }

  const GroupParams fit = read_off(r.group, r.target);
  r.candidates.push_back({"stated", stated, max_abs(r.target - element(stated))});
  r.candidates.push_back({"best_fit", fit, max_abs(r.target - element(fit))});
  r.best_residual = std::min(r.candidates[0].residual, r.candidates[1].residual);

  if (r.group == GroupId::G8) {
    r.angle_discrepancy = r.candidates[0].residual > kEmbeddingTol && r.candidates[1].residual <= kEmbeddingTol;
    r.note = "stated angle x = 3pi/2 + 2k pi; best-fit angle x = " + std::to_string(fit.x());
    if (r.angle_discrepancy) r.note += " (the image is the rotation at pi/2 + 2k pi)";
  }
  return r;
}

}  // namespace hyperlie
