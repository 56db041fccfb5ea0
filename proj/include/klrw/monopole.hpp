#pragma once

#include "klrw/abelian.hpp"
#include "klrw/poly.hpp"
#include "klrw/quiver.hpp"

#include <map>

namespace klrw {

enum class MinusculeType { Plus, Minus, Ones };  // w_{i,1}, -w0 w_{i,1}, (1,...,1)

// Abelianized image of the pure GL(d) monopole class for the r-th (anti)fundamental
// coweight twisted by the p-th exterior power of the tautological bundle:
// the subset-sum formula with e_p numerators and (1 - y_b/y_a) denominators.
LaurentRational abelianize_minuscule_gl(int d, int r, int p, int sign, int node = 0);

// Abelianized quiver monopole operator with framing deformation parameters.
LaurentRational abelianize_quiver_monopole(const Quiver& q, int node, MinusculeType type);

// General minuscule class at one node: coweight sign*(1,...,1,0,...,0) with r
// ones, twisted by the p-th exterior power of the tautological bundle.
// Computed by the fixed-point sum over r-element subsets with the matter
// factors (1 - a^{-eta} y^{-xi})^{max(0, -<xi, l>)}; an independent route to
// the Minus/Plus types above.
LaurentRational abelianize_quiver_monopole_gl(const Quiver& q, int node, int r, int p, int sign);

// u_{i,a} = x_{i,a}^{-1} * prod_{(j,b)->(i,a)} (1 - y_{j,b}/y_{i,a})
//           * prod_{[i,c]->(i,a)} (1 - a_{i,c}/y_{i,a})
//           / prod_{b != a} (1 - y_{i,a}/y_{i,b})
std::map<std::pair<int, int>, LaurentRational> u_coordinates(const Quiver& q);

// W = sum of all u_{i,a}
LaurentRational superpotential(const Quiver& q);

// f0 in (u, y, a) variables
LaurentRational f0(const Quiver& q);

// f0 with every u_{i,a} eliminated via its defining expression in (x, y, a)
LaurentRational f0_in_xya(const Quiver& q);

LaurentRational product_of_x(const Quiver& q);

}  // namespace klrw
