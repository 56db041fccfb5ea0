#pragma once

#include "klrw/poly.hpp"
#include "klrw/quiver.hpp"

#include <map>
#include <vector>

namespace klrw {

// d(k,l) = 0 when k,l have the same sign (zero counts as either),
// min(|k|,|l|) otherwise.
long d_pair(long k, long l);

// Cocharacter of the torus prod_i (C*)^{d_i}, dense per node.
using Cochar = std::vector<std::vector<long>>;

Cochar zero_cochar(const Quiver& q);
Cochar add_cochar(const Cochar& a, const Cochar& b);

// Element of the abelianized monopole algebra: finite sum of c_l(y,a) r_l.
struct AbelianElement {
  Quiver quiver;
  std::map<Cochar, LaurentPoly> terms;

  static AbelianElement generator(const Quiver& q, const Cochar& l);
  static AbelianElement unit(const Quiver& q);
  bool is_zero() const { return terms.empty(); }
  void add(const Cochar& l, const LaurentPoly& c);
  bool operator==(const AbelianElement&) const = default;
};

// Euler-characteristic factor of one matter weight: 1 - a^{-eta} y^{-xi}.
LaurentPoly weight_factor(const MatterWeight& w);

// chi_T of a sum of weight lines: product of the factors above.
LaurentPoly chi_T(const std::vector<MatterWeight>& weights);

// r_l r_m = r_{l+m} prod_i (1 - a^{-eta_i} y^{-xi_i})^{d(<xi_i,l>, <xi_i,m>)},
// extended bilinearly.
AbelianElement abelian_multiply(const AbelianElement& e1, const AbelianElement& e2,
                                const std::vector<MatterWeight>& weights);

// pullback along removing matter: r_l -> r'_l prod (1-y^{-xi})^{max(0,-<xi,l>)}
AbelianElement remove_matter_pullback(const AbelianElement& e,
                                      const std::vector<MatterWeight>& removed);

}  // namespace klrw
