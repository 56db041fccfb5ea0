#include "klrw/abelian.hpp"

#include <cstdlib>

namespace klrw {

long d_pair(long k, long l) {
  if (k == 0 || l == 0) return 0;
  if ((k > 0) == (l > 0)) return 0;
  return std::min(std::labs(k), std::labs(l));
}

Cochar zero_cochar(const Quiver& q) {
  Cochar c(q.num_nodes());
  for (int i = 0; i < q.num_nodes(); ++i) c[i].assign(q.dims[i], 0);
  return c;
}

Cochar add_cochar(const Cochar& a, const Cochar& b) {
  if (a.size() != b.size()) throw Error(Err::RankMismatch, "cocharacter rank mismatch");
  Cochar c = a;
  for (size_t i = 0; i < b.size(); ++i) {
    if (c[i].size() != b[i].size()) throw Error(Err::RankMismatch, "cocharacter rank mismatch");
    for (size_t j = 0; j < b[i].size(); ++j) c[i][j] += b[i][j];
  }
  return c;
}

AbelianElement AbelianElement::generator(const Quiver& q, const Cochar& l) {
  AbelianElement e;
  e.quiver = q;
  e.terms[l] = LaurentPoly::one();
  return e;
}

AbelianElement AbelianElement::unit(const Quiver& q) { return generator(q, zero_cochar(q)); }

void AbelianElement::add(const Cochar& l, const LaurentPoly& c) {
  auto it = terms.find(l);
  if (it == terms.end()) {
    if (!c.is_zero()) terms[l] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

LaurentPoly weight_factor(const MatterWeight& w) {
  // 1 - a^{-eta} y^{-xi}; for a framing weight the deformation multiplies
  // the subtracted monomial by a_{i,beta}
  Monomial m;
  for (auto& [k, c] : w.xi.entries) m.e[Var{'y', k.first, k.second}] = -static_cast<int>(c);
  if (w.framing) m.e[Var{'a', w.framing->first, w.framing->second}] = 1;
  LaurentPoly p = LaurentPoly::one();
  p.add_term(m, -1);
  return p;
}

LaurentPoly chi_T(const std::vector<MatterWeight>& weights) {
  LaurentPoly p = LaurentPoly::one();
  for (auto& w : weights) p = p * weight_factor(w);
  return p;
}

AbelianElement abelian_multiply(const AbelianElement& e1, const AbelianElement& e2,
                                const std::vector<MatterWeight>& weights) {
  if (!(e1.quiver == e2.quiver)) throw Error(Err::RankMismatch, "mismatched tori");
  AbelianElement out;
  out.quiver = e1.quiver;
  for (auto& [l, cl] : e1.terms)
    for (auto& [m, cm] : e2.terms) {
      LaurentPoly f = cl * cm;
      for (auto& w : weights) {
        long e = d_pair(w.xi.pairing(l), w.xi.pairing(m));
        if (e > 0) f = f * weight_factor(w).pow(static_cast<int>(e));
      }
      out.add(add_cochar(l, m), f);
    }
  return out;
}

AbelianElement remove_matter_pullback(const AbelianElement& e,
                                      const std::vector<MatterWeight>& removed) {
  AbelianElement out;
  out.quiver = e.quiver;
  for (auto& [l, cl] : e.terms) {
    LaurentPoly f = cl;
    for (auto& w : removed) {
      long p = w.xi.pairing(l);
      if (p < 0) f = f * weight_factor(w).pow(static_cast<int>(-p));
    }
    out.add(l, f);
  }
  return out;
}

}  // namespace klrw
