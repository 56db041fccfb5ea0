#include "klrw/monopole.hpp"

#include <vector>

namespace klrw {

namespace {

LaurentRational one_minus_ratio(Var num, Var den) {
  // 1 - num/den
  LaurentPoly p = LaurentPoly::one();
  Monomial m;
  m.e[num] = 1;
  m.e[den] = -1;
  p.add_term(m, -1);
  return LaurentRational::of(p);
}

// p-th elementary symmetric polynomial of the y-variables listed in `vars`
LaurentPoly elem_sym(const std::vector<Var>& vars, int p) {
  int n = static_cast<int>(vars.size());
  // e_p via dynamic programming over prod (1 + t y_i)
  std::vector<LaurentPoly> e(p + 1);
  e[0] = LaurentPoly::one();
  for (int i = 0; i < n; ++i) {
    for (int k = std::min(p, i + 1); k >= 1; --k) {
      LaurentPoly add = (k - 1 <= i) ? e[k - 1] * LaurentPoly::variable(vars[i]) : LaurentPoly{};
      e[k] = e[k] + add;
    }
  }
  return e[p];
}

}  // namespace

LaurentRational abelianize_minuscule_gl(int d, int r, int p, int sign, int node) {
  if (r < 0 || r > d || p < 0 || p > r)
    throw Error(Err::IndexOutOfRange, "need 0 <= p <= r <= d");
  std::vector<int> subset(r);
  LaurentRational total;
  // iterate over all r-element subsets J of {0,...,d-1}
  std::vector<int> J(r);
  for (int i = 0; i < r; ++i) J[i] = i;
  bool done = (r == 0 && d >= 0);
  auto emit = [&](const std::vector<int>& Jv) {
    std::vector<Var> ys;
    for (int j : Jv) ys.push_back(Var{'y', node, j});
    LaurentRational term = LaurentRational::of(elem_sym(ys, p));
    std::vector<bool> in(d, false);
    for (int j : Jv) in[j] = true;
    for (int a : Jv)
      for (int b = 0; b < d; ++b) {
        if (in[b]) continue;
        if (sign > 0)
          term = term / one_minus_ratio(Var{'y', node, b}, Var{'y', node, a});
        else
          term = term / one_minus_ratio(Var{'y', node, a}, Var{'y', node, b});
      }
    for (int a : Jv) term = term * LaurentRational::variable(Var{'x', node, a}, sign > 0 ? 1 : -1);
    total = total + term;
  };
  if (r == 0) {
    emit({});
    return total;
  }
  while (true) {
    emit(J);
    int i = r - 1;
    while (i >= 0 && J[i] == d - r + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int k = i + 1; k < r; ++k) J[k] = J[k - 1] + 1;
  }
  return total;
}

namespace {

// single summand of the minus-type monopole formula: the u-coordinate u_{i,a}
LaurentRational u_term(const Quiver& q, int i, int a) {
  LaurentRational t = LaurentRational::variable(Var{'x', i, a}, -1);
  for (auto& [j, k] : q.arrows) {
    if (k != i) continue;  // arrows (j) -> (i) into node i
    for (int aj = 0; aj < q.dims[j]; ++aj)
      t = t * one_minus_ratio(Var{'y', j, aj}, Var{'y', i, a});
  }
  for (int b = 0; b < q.framings[i]; ++b)
    t = t * one_minus_ratio(Var{'a', i, b}, Var{'y', i, a});
  for (int b = 0; b < q.dims[i]; ++b) {
    if (b == a) continue;
    t = t / one_minus_ratio(Var{'y', i, a}, Var{'y', i, b});
  }
  return t;
}

// single summand of the plus-type monopole formula
LaurentRational plus_term(const Quiver& q, int i, int a) {
  LaurentRational t = LaurentRational::variable(Var{'x', i, a}, 1);
  for (auto& [j, k] : q.arrows) {
    if (j != i) continue;  // arrows (i) -> (k) out of node i
    for (int ak = 0; ak < q.dims[k]; ++ak)
      t = t * one_minus_ratio(Var{'y', i, a}, Var{'y', k, ak});
  }
  for (int b = 0; b < q.dims[i]; ++b) {
    if (b == a) continue;
    t = t / one_minus_ratio(Var{'y', i, b}, Var{'y', i, a});
  }
  return t;
}

}  // namespace

LaurentRational abelianize_quiver_monopole_gl(const Quiver& q, int node, int r, int p,
                                              int sign) {
  int d = q.dims[node];
  if (r < 0 || r > d || p < 0 || p > r)
    throw Error(Err::IndexOutOfRange, "need 0 <= p <= r <= d");
  MatterWeights mw = matter_weights(q);
  std::vector<MatterWeight> all = mw.internal_weights;
  all.insert(all.end(), mw.framing_weights.begin(), mw.framing_weights.end());
  LaurentRational total;
  std::vector<int> J(r);
  for (int i = 0; i < r; ++i) J[i] = i;
  auto emit = [&](const std::vector<int>& Jv) {
    std::vector<Var> ys;
    for (int j : Jv) ys.push_back(Var{'y', node, j});
    LaurentRational term = LaurentRational::of(elem_sym(ys, p));
    std::vector<bool> in(d, false);
    for (int j : Jv) in[j] = true;
    for (int a : Jv)
      for (int b = 0; b < d; ++b) {
        if (in[b]) continue;
        if (sign > 0)
          term = term / one_minus_ratio(Var{'y', node, b}, Var{'y', node, a});
        else
          term = term / one_minus_ratio(Var{'y', node, a}, Var{'y', node, b});
      }
    for (int a : Jv)
      term = term * LaurentRational::variable(Var{'x', node, a}, sign > 0 ? 1 : -1);
    // matter factors at the fixed point sign * sum_{a in J} e_{node,a}
    std::vector<std::vector<long>> cochar(q.num_nodes());
    for (int i = 0; i < q.num_nodes(); ++i) cochar[i].assign(q.dims[i], 0);
    for (int a : Jv) cochar[node][a] = sign > 0 ? 1 : -1;
    for (auto& w : all) {
      long pr = w.xi.pairing(cochar);
      if (pr < 0) term = term * LaurentRational::of(weight_factor(w)).pow(static_cast<int>(-pr));
    }
    total = total + term;
  };
  if (r == 0) {
    emit({});
    return total;
  }
  while (true) {
    emit(J);
    int i = r - 1;
    while (i >= 0 && J[i] == d - r + i) --i;
    if (i < 0) break;
    ++J[i];
    for (int k = i + 1; k < r; ++k) J[k] = J[k - 1] + 1;
  }
  return total;
}

LaurentRational abelianize_quiver_monopole(const Quiver& q, int node, MinusculeType type) {
  if (type != MinusculeType::Ones && (node < 0 || node >= q.num_nodes()))
    throw Error(Err::UnknownNode, "node index out of range");
  switch (type) {
    case MinusculeType::Ones: {
      LaurentRational t = LaurentRational::constant(1);
      for (int i = 0; i < q.num_nodes(); ++i)
        for (int a = 0; a < q.dims[i]; ++a)
          t = t * LaurentRational::variable(Var{'x', i, a});
      return t;
    }
    case MinusculeType::Minus: {
      LaurentRational t;
      for (int a = 0; a < q.dims[node]; ++a) t = t + u_term(q, node, a);
      return t;
    }
    case MinusculeType::Plus: {
      LaurentRational t;
      for (int a = 0; a < q.dims[node]; ++a) t = t + plus_term(q, node, a);
      return t;
    }
  }
  throw Error(Err::Internal, "unreachable");
}

std::map<std::pair<int, int>, LaurentRational> u_coordinates(const Quiver& q) {
  std::map<std::pair<int, int>, LaurentRational> out;
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a) out[{i, a}] = u_term(q, i, a);
  return out;
}

LaurentRational superpotential(const Quiver& q) {
  LaurentRational t;
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a) t = t + u_term(q, i, a);
  return t;
}

LaurentRational f0(const Quiver& q) {
  LaurentRational t = LaurentRational::constant(1);
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a) t = t * LaurentRational::variable(Var{'u', i, a}, -1);
  for (auto& [i, j] : q.arrows)
    for (int a = 0; a < q.dims[i]; ++a)
      for (int b = 0; b < q.dims[j]; ++b)
        t = t * one_minus_ratio(Var{'y', i, a}, Var{'y', j, b});
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a)
      for (int b = 0; b < q.framings[i]; ++b)
        t = t * one_minus_ratio(Var{'a', i, b}, Var{'y', i, a});
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a)
      for (int b = 0; b < q.dims[i]; ++b) {
        if (a == b) continue;
        t = t / one_minus_ratio(Var{'y', i, a}, Var{'y', i, b});
      }
  return t;
}

LaurentRational f0_in_xya(const Quiver& q) {
  std::map<Var, LaurentRational> sub;
  for (auto& [k, u] : u_coordinates(q)) sub[Var{'u', k.first, k.second}] = u;
  return substitute(f0(q), sub);
}

LaurentRational product_of_x(const Quiver& q) {
  return abelianize_quiver_monopole(q, 0, MinusculeType::Ones);
}

}  // namespace klrw
