#pragma once

#include "klrw/diagram.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klrw {

// Coefficient ring Z[hbar, eta], sparse in (hbar-degree, eta-degree).
struct CoeffPoly {
  std::map<std::pair<int, int>, Int> c;

  static CoeffPoly unit(Int v = 1);
  static CoeffPoly monomial(int a, int b, Int v = 1);
  static CoeffPoly hbar() { return monomial(1, 0); }
  static CoeffPoly eta() { return monomial(0, 1); }

  bool is_zero() const { return c.empty(); }
  void add(int a, int b, const Int& v);
  CoeffPoly operator+(const CoeffPoly&) const;
  CoeffPoly operator-(const CoeffPoly&) const;
  CoeffPoly operator*(const CoeffPoly&) const;
  CoeffPoly operator-() const;
  bool operator==(const CoeffPoly&) const = default;

  CoeffPoly specialized(std::optional<Int> hbar_val, std::optional<Int> eta_val) const;
  std::string str() const;
};

// Finite Z[hbar,eta]-linear combination of canonical taut diagrams.
struct Morphism {
  Configuration source, target;
  std::map<DiagramKey, CoeffPoly> terms;

  static Morphism zero(const Configuration& src, const Configuration& tgt);
  static Morphism identity(const Configuration& c);
  static Morphism of(const TautDiagram& d, const CoeffPoly& c = CoeffPoly::unit());

  void add_term(const DiagramKey& k, const CoeffPoly& c);
  Morphism operator+(const Morphism&) const;
  Morphism operator-(const Morphism&) const;
  Morphism scaled(const CoeffPoly&) const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const Morphism&) const = default;
};

// A word of elementary diagrams (each slice: at most one crossing, or one
// dot, never both), composable in order from bottom to top.
struct Word {
  Configuration source;
  std::vector<TautDiagram> steps;

  const Configuration& target() const { return steps.empty() ? source : steps.back().target; }
  void validate() const;
};

// elementary step builders
TautDiagram dot_step(const Configuration& c, int node, int idx);
// exchange two black points across the circular arc between them that is
// free of other points; `outer` forces the complementary arc when both are clear
TautDiagram swap_step(const Configuration& c, std::pair<int, int> a, std::pair<int, int> b,
                      bool outer = false);
// move one black point across an adjacent red point into the gap beyond it;
// dir = +1 moves counterclockwise (increasing angle), -1 clockwise
TautDiagram red_cross_step(const Configuration& c, int node, int idx, int red_node, int red_idx,
                           int dir);
// pure isotopy: move one black point to a new angle along an arc free of
// every other point; `wrap` shifts the destination lift by full turns
TautDiagram move_step(const Configuration& c, int node, int idx, const Rat& new_angle,
                      int wrap = 0);

// image of a word in the canonical taut-diagram basis (Figure-1 rewriting)
Morphism normal_form(const Word& w);

// composition: stack m12 below m23 and rewrite to canonical form
Morphism compose(const Morphism& m23, const Morphism& m12);

// canonical form of a whole stack of basis diagrams, bottom first
Morphism compose_stack(const std::vector<const TautDiagram*>& stories,
                       const CoeffPoly& coeff = CoeffPoly::unit());

// hbar = eta = 0 composition computed by bigon inspection only; independent
// of the rewriting path above
Morphism oracle_compose(const TautDiagram& d12, const TautDiagram& d23);

Morphism specialize(const Morphism& m, std::optional<Int> hbar_val, std::optional<Int> eta_val);

// max total crossing number over basis terms, plus the per-label maxima
std::pair<long, std::vector<long>> filtration_level(const Morphism& m);

// associated-graded composition: compose, then keep only the terms whose
// per-label crossing vector equals the sum of the input levels
Morphism graded_compose(const Morphism& m23, const Morphism& m12);

// the canonical slicing of a basis diagram into elementary steps
Word slice_diagram(const TautDiagram& d);

std::string morphism_str(const Morphism& m);

}  // namespace klrw
