#pragma once

// JSON encodings shared by the CLI and downstream tooling.

#include <array>
#include <string>

#include <json.hpp>

#include "hyperlie/families.hpp"
#include "hyperlie/geometry.hpp"
#include "hyperlie/mat4.hpp"

namespace hyperlie {

using Json = nlohmann::ordered_json;

inline Json to_json(const Mat4& m) {
  Json rows = Json::array();
  for (const auto& row : m.m) rows.push_back(Json(row));
  return rows;
}

inline Json to_json(const Vec4& v) { return Json(v.v); }

inline Vec4 vec_from_json(const Json& j) { return Vec4{j.get<std::array<double, kDim>>()}; }

namespace detail {

template <typename Report, typename Fn>
void visit_predicates(Report& r, Fn&& fn) {
  fn("W0(J1)", r.kahler[0]);
  fn("W0(J2)", r.kahler[1]);
  fn("W0(J3)", r.kahler[2]);
  fn("W2(J1)", r.w2_j1);
  fn("W4(J1)", r.w4_j1);
  fn("W1(J2)", r.w1[0]);
  fn("W2(J2)", r.w2[0]);
  fn("W3(J2)", r.w3[0]);
  fn("W1+W2(J2)", r.w1_plus_w2[0]);
  fn("W1(J3)", r.w1[1]);
  fn("W2(J3)", r.w2[1]);
  fn("W3(J3)", r.w3[1]);
  fn("W1+W2(J3)", r.w1_plus_w2[1]);
  fn("N(J1)", r.nijenhuis[0]);
  fn("N(J2)", r.nijenhuis[1]);
  fn("N(J3)", r.nijenhuis[2]);
  fn("d(theta1.J1)", r.closed_lee_form);
}

}  // namespace detail

/// {"tolerance", "residuals": {key: r}, "predicates": {key: bool},
///  "verdicts": {"K","HC","HC'","W0","integrable"}, "finest_class", "lee_forms": [[..]x3]}
inline Json to_json(const ClassificationReport& r) {
  Json residuals = Json::object();
  Json predicates = Json::object();
  detail::visit_predicates(r, [&](const char* key, const Predicate& p) {
    residuals[key] = p.residual;
    predicates[key] = p.holds;
  });
  Json lee = Json::array();
  for (const auto& t : r.lee_forms) lee.push_back(to_json(t));
  return Json{{"tolerance", r.tolerance},
              {"residuals", residuals},
              {"predicates", predicates},
              {"verdicts",
               {{"K", r.in_k}, {"HC", r.in_hc}, {"HC'", r.in_hc_prime}, {"W0", r.in_w0}, {"integrable", r.integrable}}},
              {"finest_class", std::string(r.finest_class())},
              {"lee_forms", lee}};
}

inline ClassificationReport report_from_json(const Json& j) {
  ClassificationReport r;
  r.tolerance = j.at("tolerance").get<double>();
  const Json& residuals = j.at("residuals");
  const Json& predicates = j.at("predicates");
  detail::visit_predicates(r, [&](const char* key, Predicate& p) {
    p.residual = residuals.at(key).get<double>();
    p.holds = predicates.at(key).get<bool>();
  });
  const Json& v = j.at("verdicts");
  r.in_k = v.at("K").get<bool>();
  r.in_hc = v.at("HC").get<bool>();
  r.in_hc_prime = v.at("HC'").get<bool>();
  r.in_w0 = v.at("W0").get<bool>();
  r.integrable = v.at("integrable").get<bool>();
  const Json& lee = j.at("lee_forms");
  for (std::size_t a = 0; a < 3; ++a) r.lee_forms[a] = vec_from_json(lee.at(a));
  return r;
}

}  // namespace hyperlie
