#pragma once

#include "klrw/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace klrw {

// Symbolic variable: x/y/a (printed A)/u families indexed by (node, index).
struct Var {
  char family;  // 'x', 'y', 'a', 'u'
  int node;
  int idx;

  int family_rank() const {
    switch (family) {
      case 'x': return 0;
      case 'y': return 1;
      case 'a': return 2;
      case 'u': return 3;
    }
    return 4;
  }
  auto key() const { return std::make_tuple(family_rank(), node, idx); }
  bool operator==(const Var& o) const { return key() == o.key(); }
  bool operator<(const Var& o) const { return key() < o.key(); }
};

// Sparse exponent vector; exponents may be negative (Laurent).
struct Monomial {
  std::map<Var, int> e;

  long total_degree() const;
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  bool is_one() const { return e.empty(); }
  bool operator==(const Monomial&) const = default;
};

// graded-lex order on monomials over the fixed Var order
bool mono_less(const Monomial& a, const Monomial& b);
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};

class LaurentPoly {
 public:
  std::map<Monomial, Rat, MonoLess> terms;

  LaurentPoly() = default;
  static LaurentPoly constant(const Rat& c);
  static LaurentPoly variable(Var v, int exp = 1);
  static LaurentPoly one() { return constant(1); }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  void add_term(const Monomial& m, const Rat& c);

  LaurentPoly operator+(const LaurentPoly&) const;
  LaurentPoly operator-(const LaurentPoly&) const;
  LaurentPoly operator*(const LaurentPoly&) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(const Rat& c) const;
  LaurentPoly pow(int n) const;  // n >= 0
  bool operator==(const LaurentPoly& o) const { return terms == o.terms; }

  // leading term under graded-lex (largest monomial); poly must be nonzero
  const std::pair<const Monomial, Rat>& leading() const;

  // per-variable minimum exponent over all terms (the monomial content)
  Monomial monomial_content() const;
  LaurentPoly shifted(const Monomial& by) const;  // multiply every term by `by`
};

// exact division over Q; throws Error(Internal) if not divisible
LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b);
std::optional<LaurentPoly> try_divide(const LaurentPoly& a, const LaurentPoly& b);

// gcd of true polynomials (no negative exponents), monic-normalized; gcd(0,0)=0
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Exact rational function, kept in reduced canonical form:
// den is a true polynomial, monomial-free and monic under graded-lex;
// gcd(num-polynomial-part, den) = 1; the Laurent shift lives in num.
class LaurentRational {
 public:
  LaurentPoly num, den;

  LaurentRational() : num(), den(LaurentPoly::one()) {}
  LaurentRational(LaurentPoly n, LaurentPoly d);
  static LaurentRational of(const LaurentPoly& p);
  static LaurentRational constant(const Rat& c) { return of(LaurentPoly::constant(c)); }
  static LaurentRational variable(Var v, int exp = 1) {
    return of(LaurentPoly::variable(v, exp));
  }

  bool is_zero() const { return num.is_zero(); }
  LaurentRational operator+(const LaurentRational&) const;
  LaurentRational operator-(const LaurentRational&) const;
  LaurentRational operator*(const LaurentRational&) const;
  LaurentRational operator/(const LaurentRational&) const;
  LaurentRational operator-() const;
  LaurentRational inverse() const;
  LaurentRational pow(int n) const;  // any integer n
  bool operator==(const LaurentRational& o) const { return num == o.num && den == o.den; }

 private:
  void reduce();
};

// substitute variables by rational functions (missing vars stay symbolic)
LaurentRational substitute(const LaurentPoly& p, const std::map<Var, LaurentRational>& sub);
LaurentRational substitute(const LaurentRational& r, const std::map<Var, LaurentRational>& sub);

// canonical text form; `names` maps node id -> display name (defaults to id+1)
std::string var_str(const Var& v, const std::vector<std::string>* names = nullptr);
std::string poly_str(const LaurentPoly& p, const std::vector<std::string>* names = nullptr);
std::string rational_str(const LaurentRational& r, const std::vector<std::string>* names = nullptr);

}  // namespace klrw
