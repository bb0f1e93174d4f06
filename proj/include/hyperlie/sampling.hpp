#pragma once

#include <array>
#include <random>

#include "hyperlie/families.hpp"

namespace hyperlie {

/// Distance kept from each family's degenerate locus when drawing "generic" parameters.
inline constexpr double kGenericMargin = 0.1;

/// Uniform draw of (a,b,c,d) in [lo, hi]^4, rejected until is_generic(.., margin) holds.
template <typename Rng>
FamilyElement sample_generic(FamilyId family, Rng& rng, double margin = kGenericMargin, double lo = -2.0,
                             double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  FamilyElement e{family, {}};
  do {
    for (double& p : e.params) p = dist(rng);
  } while (!is_generic(e, margin));
  return e;
}

}  // namespace hyperlie
