#include "klrw/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace klrw {

long Monomial::total_degree() const {
  long d = 0;
  for (auto& [v, k] : e) d += k;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (auto& [v, k] : o.e) {
    int n = (r.e.count(v) ? r.e[v] : 0) + k;
    if (n == 0)
      r.e.erase(v);
    else
      r.e[v] = n;
  }
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r;
  for (auto& [v, k] : e) r.e[v] = -k;
  return r;
}

bool mono_less(const Monomial& a, const Monomial& b) {
  long da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // lex on the merged variable list; higher exponent on an earlier variable wins
  auto ia = a.e.begin(), ib = b.e.begin();
  while (ia != a.e.end() || ib != b.e.end()) {
    if (ia == a.e.end()) return (ib->second > 0);
    if (ib == b.e.end()) return !(ia->second > 0);
    if (ia->first == ib->first) {
      if (ia->second != ib->second) return ia->second < ib->second;
      ++ia, ++ib;
    } else if (ia->first < ib->first) {
      // a has an exponent on an earlier variable that b lacks
      if (ia->second != 0) return ia->second < 0;
      ++ia;
    } else {
      if (ib->second != 0) return ib->second > 0;
      ++ib;
    }
  }
  return false;
}

LaurentPoly LaurentPoly::constant(const Rat& c) {
  LaurentPoly p;
  if (c != 0) p.terms[Monomial{}] = c;
  return p;
}

LaurentPoly LaurentPoly::variable(Var v, int exp) {
  LaurentPoly p;
  Monomial m;
  if (exp != 0) m.e[v] = exp;
  p.terms[m] = 1;
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_one());
}

void LaurentPoly::add_term(const Monomial& m, const Rat& c) {
  auto it = terms.find(m);
  if (it == terms.end()) {
    if (c != 0) terms[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto& [m, c] : o.terms) r.add_term(m, -c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto& [m, c] : terms) r.terms[m] = -c;
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rat& c) const {
  LaurentPoly r;
  if (c == 0) return r;
  for (auto& [m, k] : terms) r.terms[m] = k * c;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [m1, c1] : terms)
    for (auto& [m2, c2] : o.terms) r.add_term(m1 * m2, c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
  LaurentPoly r = one();
  for (int i = 0; i < n; ++i) r = r * (*this);
  return r;
}

const std::pair<const Monomial, Rat>& LaurentPoly::leading() const {
  if (terms.empty()) throw Error(Err::Internal, "leading term of zero polynomial");
  return *terms.rbegin();
}

Monomial LaurentPoly::monomial_content() const {
  Monomial m;
  std::set<Var> vars;
  for (auto& [mon, c] : terms)
    for (auto& [v, k] : mon.e) vars.insert(v);
  for (auto v : vars) {
    int mn = 0;
    bool first = true;
    for (auto& [mon, c] : terms) {
      auto it = mon.e.find(v);
      int k = it == mon.e.end() ? 0 : it->second;
      mn = first ? k : std::min(mn, k);
      first = false;
    }
    if (mn != 0) m.e[v] = mn;
  }
  return m;
}

LaurentPoly LaurentPoly::shifted(const Monomial& by) const {
  LaurentPoly r;
  for (auto& [m, c] : terms) r.terms[m * by] = c;
  return r;
}

std::optional<LaurentPoly> try_divide(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw Error(Err::Internal, "division by zero polynomial");
  LaurentPoly q, r = a;
  auto& [lb, cb] = b.leading();
  Monomial lbi = lb.inverse();
  while (!r.is_zero()) {
    auto& [lr, cr] = r.leading();
    Monomial m = lr * lbi;
    bool laurent = false;
    for (auto& [v, k] : m.e)
      if (k < 0) laurent = true;
    if (laurent) return std::nullopt;  // not divisible (over true polynomials)
    Rat c = cr / cb;
    q.add_term(m, c);
    LaurentPoly t;
    t.terms[m] = c;
    r = r - t * b;
  }
  return q;
}

LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error(Err::Internal, "inexact polynomial division");
  return *q;
}

namespace {

// largest variable occurring in p, if any
std::optional<Var> main_var(const LaurentPoly& p) {
  std::optional<Var> best;
  for (auto& [m, c] : p.terms)
    for (auto& [v, k] : m.e)
      if (!best || *best < v) best = v;
  return best;
}

// coefficients of p as a polynomial in v (degree -> poly in smaller vars)
std::vector<LaurentPoly> coeffs_in(const LaurentPoly& p, Var v) {
  int deg = 0;
  for (auto& [m, c] : p.terms) {
    auto it = m.e.find(v);
    if (it != m.e.end()) deg = std::max(deg, it->second);
  }
  std::vector<LaurentPoly> cs(deg + 1);
  for (auto& [m, c] : p.terms) {
    Monomial rest = m;
    int k = 0;
    auto it = rest.e.find(v);
    if (it != rest.e.end()) {
      k = it->second;
      rest.e.erase(v);
    }
    cs[k].add_term(rest, c);
  }
  return cs;
}

LaurentPoly from_coeffs(const std::vector<LaurentPoly>& cs, Var v) {
  LaurentPoly p;
  for (int k = 0; k < static_cast<int>(cs.size()); ++k)
    p = p + cs[k] * LaurentPoly::variable(v, k);
  return p;
}

int deg_in(const std::vector<LaurentPoly>& cs) {
  for (int k = static_cast<int>(cs.size()) - 1; k >= 0; --k)
    if (!cs[k].is_zero()) return k;
  return -1;
}

LaurentPoly make_monic(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  return p.scaled(Rat(1) / p.leading().second);
}

}  // namespace

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return LaurentPoly::one();
  Var va = *main_var(a), vb = *main_var(b);
  Var v = va < vb ? vb : va;

  auto ca = coeffs_in(a, v), cb = coeffs_in(b, v);
  // content w.r.t. v (gcd of coefficients); recursion drops a variable
  auto content = [](const std::vector<LaurentPoly>& cs) {
    LaurentPoly g;
    for (auto& c : cs) g = poly_gcd(g, c);
    return g;
  };
  LaurentPoly conta = content(ca), contb = content(cb);
  LaurentPoly gc = poly_gcd(conta, contb);

  if (deg_in(ca) == 0) return make_monic(gc);  // a free of v
  if (deg_in(cb) == 0) return make_monic(gc);

  auto primitive = [&](std::vector<LaurentPoly> cs) {
    LaurentPoly c;
    for (auto& x : cs) c = poly_gcd(c, x);
    if (!c.is_zero() && !c.is_constant())
      for (auto& x : cs) x = divide_exact(x, c);
    return cs;
  };
  // pseudo-remainder of A by B in v, with A,B primitive
  auto prem = [&](std::vector<LaurentPoly> A, const std::vector<LaurentPoly>& B) {
    int db = deg_in(B);
    const LaurentPoly& lcb = B[db];
    int da = deg_in(A);
    while (da >= db && da >= 0) {
      LaurentPoly lca = A[da];
      std::vector<LaurentPoly> nxt(std::max(A.size(), B.size() + (da - db)));
      for (int k = 0; k <= da; ++k) nxt[k] = A[k] * lcb;
      for (int k = 0; k <= db; ++k) nxt[k + da - db] = nxt[k + da - db] - lca * B[k];
      A = std::move(nxt);
      int nda = deg_in(A);
      if (nda >= da) throw Error(Err::Internal, "pseudo-division failed to reduce degree");
      da = nda;
    }
    return A;
  };
  std::vector<LaurentPoly> A = primitive(ca), B = primitive(cb);
  if (deg_in(A) < deg_in(B)) std::swap(A, B);
  while (deg_in(B) >= 0) {
    auto R = prem(A, B);
    A = std::move(B);
    B = primitive(R);
  }
  LaurentPoly g = deg_in(A) > 0 ? from_coeffs(A, v) : LaurentPoly::one();
  return make_monic(g * gc);
}

LaurentRational::LaurentRational(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(Err::Internal, "zero denominator");
  reduce();
}

LaurentRational LaurentRational::of(const LaurentPoly& p) {
  LaurentRational r;
  r.num = p;
  r.den = LaurentPoly::one();
  return r;
}

void LaurentRational::reduce() {
  if (num.is_zero()) {
    den = LaurentPoly::one();
    return;
  }
  // split off Laurent monomial shifts so gcd runs on true polynomials
  Monomial mn = num.monomial_content(), md = den.monomial_content();
  LaurentPoly N = num.shifted(mn.inverse());
  LaurentPoly D = den.shifted(md.inverse());
  LaurentPoly g = poly_gcd(N, D);
  if (!g.is_constant()) {
    N = divide_exact(N, g);
    D = divide_exact(D, g);
  }
  // canonical scalar: monic denominator
  Rat lc = D.leading().second;
  N = N.scaled(Rat(1) / lc);
  num = N.shifted(mn * md.inverse());
  den = D.scaled(Rat(1) / lc);
}

LaurentRational LaurentRational::operator+(const LaurentRational& o) const {
  return LaurentRational(num * o.den + o.num * den, den * o.den);
}
LaurentRational LaurentRational::operator-(const LaurentRational& o) const {
  return LaurentRational(num * o.den - o.num * den, den * o.den);
}
LaurentRational LaurentRational::operator*(const LaurentRational& o) const {
  return LaurentRational(num * o.num, den * o.den);
}
LaurentRational LaurentRational::operator/(const LaurentRational& o) const {
  if (o.is_zero()) throw Error(Err::Internal, "division by zero rational function");
  return LaurentRational(num * o.den, den * o.num);
}
LaurentRational LaurentRational::operator-() const {
  LaurentRational r = *this;
  r.num = -r.num;
  return r;
}
LaurentRational LaurentRational::inverse() const {
  if (is_zero()) throw Error(Err::Internal, "inverse of zero");
  return LaurentRational(den, num);
}
LaurentRational LaurentRational::pow(int n) const {
  LaurentRational r = LaurentRational::constant(1);
  LaurentRational b = n >= 0 ? *this : inverse();
  for (int i = 0; i < std::abs(n); ++i) r = r * b;
  return r;
}

LaurentRational substitute(const LaurentPoly& p, const std::map<Var, LaurentRational>& sub) {
  LaurentRational acc;
  for (auto& [m, c] : p.terms) {
    LaurentRational t = LaurentRational::constant(c);
    for (auto& [v, k] : m.e) {
      auto it = sub.find(v);
      LaurentRational base = it == sub.end() ? LaurentRational::variable(v) : it->second;
      t = t * base.pow(k);
    }
    acc = acc + t;
  }
  return acc;
}

LaurentRational substitute(const LaurentRational& r, const std::map<Var, LaurentRational>& sub) {
  return substitute(r.num, sub) / substitute(r.den, sub);
}

std::string var_str(const Var& v, const std::vector<std::string>* names) {
  std::string nm = (names && v.node < static_cast<int>(names->size()))
                       ? (*names)[v.node]
                       : std::to_string(v.node + 1);
  char fam = v.family == 'a' ? 'A' : v.family;
  return std::string(1, fam) + "[" + nm + "," + std::to_string(v.idx + 1) + "]";
}

std::string poly_str(const LaurentPoly& p, const std::vector<std::string>* names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // descending monomial order keeps the text canonical
  for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool coeff_shown = (ac != 1) || m.is_one();
    if (coeff_shown) os << rat_str(ac);
    bool need_star = coeff_shown;
    for (auto& [v, k] : m.e) {
      if (need_star) os << "*";
      os << var_str(v, names);
      if (k != 1) os << "^" << k;
      need_star = true;
    }
  }
  return os.str();
}

std::string rational_str(const LaurentRational& r, const std::vector<std::string>* names) {
  if (r.den == LaurentPoly::one()) return poly_str(r.num, names);
  std::string n = poly_str(r.num, names);
  std::string d = poly_str(r.den, names);
  if (r.num.terms.size() > 1) n = "(" + n + ")";
  if (r.den.terms.size() > 1) d = "(" + d + ")";
  return n + " / " + d;
}

}  // namespace klrw
