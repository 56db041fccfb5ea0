#include "klrw/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace klrw {

// ---------------------------------------------------------------- CoeffPoly

CoeffPoly CoeffPoly::unit(Int v) { return monomial(0, 0, std::move(v)); }

CoeffPoly CoeffPoly::monomial(int a, int b, Int v) {
  CoeffPoly p;
  if (v != 0) p.c[{a, b}] = std::move(v);
  return p;
}

void CoeffPoly::add(int a, int b, const Int& v) {
  auto key = std::make_pair(a, b);
  auto it = c.find(key);
  if (it == c.end()) {
    if (v != 0) c[key] = v;
  } else {
    it->second += v;
    if (it->second == 0) c.erase(it);
  }
}

CoeffPoly CoeffPoly::operator+(const CoeffPoly& o) const {
  CoeffPoly r = *this;
  for (auto& [k, v] : o.c) r.add(k.first, k.second, v);
  return r;
}

CoeffPoly CoeffPoly::operator-(const CoeffPoly& o) const {
  CoeffPoly r = *this;
  for (auto& [k, v] : o.c) r.add(k.first, k.second, -v);
  return r;
}

CoeffPoly CoeffPoly::operator*(const CoeffPoly& o) const {
  CoeffPoly r;
  for (auto& [k1, v1] : c)
    for (auto& [k2, v2] : o.c) r.add(k1.first + k2.first, k1.second + k2.second, v1 * v2);
  return r;
}

CoeffPoly CoeffPoly::operator-() const {
  CoeffPoly r;
  for (auto& [k, v] : c) r.c[k] = -v;
  return r;
}

CoeffPoly CoeffPoly::specialized(std::optional<Int> hv, std::optional<Int> ev) const {
  CoeffPoly r;
  for (auto& [k, v] : c) {
    Int val = v;
    int a = k.first, b = k.second;
    if (hv) {
      for (int i = 0; i < k.first; ++i) val *= *hv;
      a = 0;
    }
    if (ev) {
      for (int i = 0; i < k.second; ++i) val *= *ev;
      b = 0;
    }
    r.add(a, b, val);
  }
  return r;
}

std::string CoeffPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : c) {
    Int av = v < 0 ? Int(-v) : v;
    if (first)
      os << (v < 0 ? "-" : "");
    else
      os << (v < 0 ? " - " : " + ");
    first = false;
    bool shown = (av != 1) || (k.first == 0 && k.second == 0);
    if (shown) os << av.str();
    bool star = shown;
    if (k.first) {
      if (star) os << "*";
      os << "hbar";
      if (k.first > 1) os << "^" << k.first;
      star = true;
    }
    if (k.second) {
      if (star) os << "*";
      os << "eta";
      if (k.second > 1) os << "^" << k.second;
    }
  }
  return os.str();
}

// ----------------------------------------------------------------- Morphism

Morphism Morphism::zero(const Configuration& src, const Configuration& tgt) {
  return Morphism{src, tgt, {}};
}

Morphism Morphism::identity(const Configuration& c) { return of(identity_diagram(c)); }

Morphism Morphism::of(const TautDiagram& d, const CoeffPoly& c) {
  Morphism m{d.source, d.target, {}};
  m.add_term(d.key, c);
  return m;
}

void Morphism::add_term(const DiagramKey& k, const CoeffPoly& c) {
  if (c.is_zero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms[k] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Morphism Morphism::operator+(const Morphism& o) const {
  if (!(source == o.source && target == o.target))
    throw Error(Err::MismatchedConfigurations, "morphism sum: configurations differ");
  Morphism r = *this;
  for (auto& [k, c] : o.terms) r.add_term(k, c);
  return r;
}

Morphism Morphism::operator-(const Morphism& o) const {
  return *this + o.scaled(CoeffPoly::unit(-1));
}

Morphism Morphism::scaled(const CoeffPoly& s) const {
  Morphism r{source, target, {}};
  for (auto& [k, c] : terms) r.add_term(k, c * s);
  return r;
}

// -------------------------------------------------------------- step makers

namespace {

std::vector<Rat> all_point_values(const Configuration& c) {
  std::vector<Rat> v;
  for (auto& vv : c.red)
    for (auto& a : vv) v.push_back(a.value);
  for (auto& vv : c.black)
    for (auto& a : vv) v.push_back(a.value);
  return v;
}

// does any translate of v lie strictly inside the lifted interval (lo, hi)?
bool translate_inside(const Rat& v, const Rat& lo, const Rat& hi) {
  Int f = rat_floor(hi - v);
  Rat cand = v + Rat(f);
  if (cand == hi) cand = cand - 1;
  return cand > lo && cand < hi;
}

bool arc_blocked(const Configuration& c, const Rat& lo, const Rat& hi,
                 const std::vector<Rat>& excl) {
  for (auto& v : all_point_values(c)) {
    bool skip = false;
    for (auto& e : excl)
      if (rat_mod1(e) == v) skip = true;
    if (skip) continue;
    if (translate_inside(v, lo, hi)) return true;
  }
  return false;
}

}  // namespace

TautDiagram dot_step(const Configuration& c, int node, int idx) {
  TautDiagram d = identity_diagram(c);
  for (auto& st : d.key.strands)
    if (st.label == node && st.from == idx) st.weight = 1;
  return d;
}

TautDiagram swap_step(const Configuration& c, std::pair<int, int> a, std::pair<int, int> b,
                      bool outer) {
  Rat pa = c.black[a.first][a.second].value;
  Rat pb = c.black[b.first][b.second].value;
  if (pa == pb) throw Error(Err::BadInput, "swap: identical points");
  Rat lo = std::min(pa, pb), hi = std::max(pa, pb);
  bool inner_clear = !arc_blocked(c, lo, hi, {pa, pb});
  bool outer_clear = !arc_blocked(c, hi, lo + 1, {pa, pb});
  bool use_outer;
  if (inner_clear && outer_clear)
    use_outer = outer;
  else if (inner_clear) {
    if (outer) throw Error(Err::BadInput, "swap: outer arc is blocked");
    use_outer = false;
  } else if (outer_clear)
    use_outer = true;
  else
    throw Error(Err::BadInput, "swap: no clear arc between the two points");
  Configuration t = c;
  t.black[a.first][a.second] = Angle(pb);
  t.black[b.first][b.second] = Angle(pa);
  int wa = 0, wb = 0;
  if (use_outer) {
    if (pa < pb) {
      wa = -1;  // a travels downward through 0
      wb = 1;
    } else {
      wa = 1;
      wb = -1;
    }
  }
  DiagramKey k;
  for (int i = 0; i < c.quiver.num_nodes(); ++i)
    for (int al = 0; al < c.quiver.dims[i]; ++al) {
      StrandData st{i, al, al, 0, 0};
      if (std::make_pair(i, al) == a) st.wind = wa;
      if (std::make_pair(i, al) == b) st.wind = wb;
      k.strands.push_back(st);
    }
  return make_taut(c, t, k);
}

TautDiagram red_cross_step(const Configuration& c, int node, int idx, int red_node, int red_idx,
                           int dir) {
  Rat p = c.black[node][idx].value;
  Rat r = c.red[red_node][red_idx].value;
  Rat line = r;
  if (dir > 0 && line < p) line = line + 1;
  if (dir < 0 && line > p) line = line - 1;
  Rat lo = std::min(p, line), hi = std::max(p, line);
  if (arc_blocked(c, lo, hi, {p, r}))
    throw Error(Err::BadInput, "red_cross: a point lies between the black and red points");
  // nearest obstruction beyond the line
  Rat best;
  bool have = false;
  for (auto& v : all_point_values(c)) {
    Rat cand;
    Int fl = rat_floor(line - v);
    if (dir > 0) {
      cand = v + Rat(fl) + 1;
      if (cand == line) cand = cand + 1;
    } else {
      cand = v + Rat(fl);
      if (cand == line) cand = cand - 1;
    }
    if (!have || (dir > 0 ? cand < best : cand > best)) {
      best = cand;
      have = true;
    }
  }
  Rat land = (line + best) / 2;
  Configuration t = c;
  t.black[node][idx] = Angle(land);
  DiagramKey k;
  for (int i = 0; i < c.quiver.num_nodes(); ++i)
    for (int al = 0; al < c.quiver.dims[i]; ++al) {
      StrandData st{i, al, al, 0, 0};
      if (i == node && al == idx) st.wind = static_cast<int>(static_cast<long>(rat_floor(land)));
      k.strands.push_back(st);
    }
  return make_taut(c, t, k);
}

TautDiagram move_step(const Configuration& c, int node, int idx, const Rat& new_angle,
                      int wrap) {
  Rat p = c.black[node][idx].value;
  Rat dest = rat_mod1(new_angle) + wrap;
  Rat lo = std::min(p, dest), hi = std::max(p, dest);
  if (arc_blocked(c, lo, hi, {p}))
    throw Error(Err::BadInput, "move: the swept arc contains another point");
  Configuration t = c;
  t.black[node][idx] = Angle(dest);
  t = validate_configuration(c.quiver, t.red, t.black);
  DiagramKey k;
  for (int i = 0; i < c.quiver.num_nodes(); ++i)
    for (int al = 0; al < c.quiver.dims[i]; ++al) {
      StrandData st{i, al, al, 0, 0};
      if (i == node && al == idx) st.wind = static_cast<int>(static_cast<long>(rat_floor(dest)));
      k.strands.push_back(st);
    }
  return make_taut(c, t, k);
}

void Word::validate() const {
  const Configuration* cur = &source;
  for (auto& s : steps) {
    if (!(s.source == *cur)) throw Error(Err::InvalidWord, "word steps are not composable");
    CrossingReport r = crossings(s);
    long cr = r.total_black_same() + r.unrelated;
    for (auto& [a, c] : r.adjacent) cr += c;
    for (auto& [a, c] : r.red_black) cr += c;
    long w = 0;
    for (auto& st : s.key.strands) w += st.weight;
    if (!((cr <= 1 && w == 0) || (cr == 0 && w <= 1)))
      throw Error(Err::InvalidWord, "word step is not elementary");
    cur = &s.target;
  }
}

// ------------------------------------------------------------- engine items

namespace {

struct Ev {
  char kind;  // 'X' strands a<b cross, diff pos[a]-pos[b] crosses k
              // 'R' strand a crosses red line b (translate k)
              // 'D' dot on strand a
  int a = -1, b = -1;
  long k = 0;
  bool operator==(const Ev&) const = default;
  auto key() const { return std::tie(kind, a, b, k); }
  bool operator<(const Ev& o) const { return key() < o.key(); }
};

struct Item {
  CoeffPoly coeff;
  std::vector<Rat> start, dest;  // per-strand lifts at bottom / top
  std::vector<Ev> ev;
};

bool involves(const Ev& e, int strand) {
  if (e.kind == 'X') return e.a == strand || e.b == strand;
  return e.a == strand;
}

bool shares_strand(const Ev& x, const Ev& y) {
  if (x.kind == 'D') return involves(y, x.a);
  if (y.kind == 'D') return involves(x, y.a);
  if (involves(y, x.a)) return true;
  if (x.kind == 'X' && involves(y, x.b)) return true;
  return false;
}

// the three pairwise objects of a would-be triangle; empty if not a triangle
std::set<std::pair<char, int>> objects_of(const Ev& e) {
  std::set<std::pair<char, int>> o;
  if (e.kind == 'X') {
    o.insert({'s', e.a});
    o.insert({'s', e.b});
  } else if (e.kind == 'R') {
    o.insert({'s', e.a});
    o.insert({'r', e.b});
  }
  return o;
}

struct EngineError : Error {
  explicit EngineError(const std::string& w) : Error(Err::Internal, "engine: " + w) {}
};

class Engine {
 public:
  Configuration src, tgt;
  const Quiver* q;
  std::vector<int> label, src_idx;  // per strand
  std::vector<Rat> red;
  std::vector<int> red_label;
  std::deque<Item> queue;
  Morphism out;
  long guard = 0;
  static constexpr long kGuard = 5000000;

  Engine(const Configuration& s, const Configuration& t)
      : src(s), tgt(t), q(&src.quiver), out(Morphism::zero(s, t)) {
    for (int i = 0; i < q->num_nodes(); ++i)
      for (int a = 0; a < q->dims[i]; ++a) {
        label.push_back(i);
        src_idx.push_back(a);
      }
    for (int i = 0; i < q->num_nodes(); ++i)
      for (auto& r : src.red[i]) {
        red.push_back(r.value);
        red_label.push_back(i);
      }
  }

  int nstr() const { return static_cast<int>(label.size()); }
  void bump() {
    if (++guard > kGuard) throw EngineError("step guard exceeded");
  }

  // ---- frozen dynamics ---------------------------------------------------

  // landing value for a red crossing: just past the line, halfway to the
  // nearest obstruction among all other points and translates
  Rat red_landing(const std::vector<Rat>& pos, int strand, const Rat& line) const {
    int dir = pos[strand] < line ? +1 : -1;
    Rat best;
    bool have = false;
    auto consider = [&](const Rat& v) {
      Rat cand;
      Int fl = rat_floor(line - v);
      if (dir > 0) {
        cand = v + Rat(fl) + 1;
        if (cand == line) cand = cand + 1;
      } else {
        cand = v + Rat(fl);
        if (cand == line) cand = cand - 1;
      }
      if (!have || (dir > 0 ? cand < best : cand > best)) {
        best = cand;
        have = true;
      }
    };
    for (int s = 0; s < nstr(); ++s) consider(pos[s]);
    for (auto& r : red) consider(r);
    return (line + best) / 2;
  }

  // apply one event to a position vector; validates the move
  void apply_event(std::vector<Rat>& pos, const Ev& e) const {
    if (e.kind == 'D') return;
    if (e.kind == 'X') {
      Rat pa = pos[e.a], pb = pos[e.b];
      Rat diff = pa - pb, kk(e.k);
      if (diff == kk) throw EngineError("crossing at coincidence");
      if (!(diff - kk < 1 && kk - diff < 1)) throw EngineError("crossing translate too far");
      Rat na = pb + kk;
      Rat lo = std::min(pa, na), hi = std::max(pa, na);
      for (int s = 0; s < nstr(); ++s) {
        if (s == e.a || s == e.b) continue;
        if (translate_inside(pos[s], lo, hi)) throw EngineError("blocked crossing arc");
      }
      for (auto& r : red)
        if (translate_inside(r, lo, hi)) throw EngineError("crossing arc sweeps a red point");
      pos[e.a] = na;
      pos[e.b] = pa - kk;
    } else {
      Rat line = red[e.b] + Rat(e.k);
      Rat pa = pos[e.a];
      if (pa == line) throw EngineError("red crossing at coincidence");
      if (!(pa - line < 1 && line - pa < 1)) throw EngineError("red translate too far");
      Rat land = red_landing(pos, e.a, line);
      Rat lo = std::min(pa, land), hi = std::max(pa, land);
      for (int s = 0; s < nstr(); ++s) {
        if (s == e.a) continue;
        if (translate_inside(pos[s], lo, hi)) throw EngineError("blocked red arc");
      }
      for (size_t r = 0; r < red.size(); ++r) {
        Int cnt = rat_floor(hi - red[r]) - rat_floor(lo - red[r]);
        Int expect = (static_cast<int>(r) == e.b) ? 1 : 0;
        if (cnt != expect) throw EngineError("red arc sweeps wrong red set");
      }
      pos[e.a] = land;
    }
  }

  std::vector<std::vector<Rat>> replay(const Item& it) const {
    std::vector<std::vector<Rat>> lvl;
    lvl.push_back(it.start);
    for (auto& e : it.ev) {
      auto nxt = lvl.back();
      apply_event(nxt, e);
      lvl.push_back(std::move(nxt));
    }
    return lvl;
  }

  void validate(const Item& it) const {
    auto lvl = replay(it);
    const auto& fin = lvl.back();
    for (int a = 0; a < nstr(); ++a) {
      for (int b = a + 1; b < nstr(); ++b)
        if (rat_floor(fin[a] - fin[b]) != rat_floor(it.dest[a] - it.dest[b]))
          throw EngineError("final level disagrees with destination (pair)");
      for (auto& r : red)
        if (rat_floor(fin[a] - r) != rat_floor(it.dest[a] - r))
          throw EngineError("final level disagrees with destination (red)");
    }
  }

  // ---- slice surgery -------------------------------------------------------

  void transport_down(Item& it, int from, int to) const {
    Ev e = it.ev[from];
    for (int m = from - 1; m >= to; --m) {
      if (shares_strand(it.ev[m], e)) throw EngineError("illegal transport down");
      it.ev[m + 1] = it.ev[m];
    }
    it.ev[to] = e;
  }

  void transport_up(Item& it, int from, int to) const {
    Ev e = it.ev[from];
    for (int m = from + 1; m <= to; ++m) {
      if (shares_strand(it.ev[m], e)) throw EngineError("illegal transport up");
      it.ev[m - 1] = it.ev[m];
    }
    it.ev[to] = e;
  }

  // delete slices [lo, hi]; downstream events and dest follow the track
  // permutation the removed window performed
  void excise_window(Item& it, int lo, int hi) const {
    auto lvl = replay(it);
    const auto& bot = lvl[lo];
    const auto& top = lvl[hi + 1];
    // Exact integer offsets identify a track unequivocally (black crossings
    // preserve the position values); pin those first. Red landings drift the
    // remaining positions by fractions, so the rest is matched by sign-cell
    // structure, anchored on the reds and the pinned strands.
    std::vector<int> nu(nstr(), -1);
    std::vector<long> delta(nstr(), 0);
    std::vector<bool> used(nstr(), false);
    std::vector<int> loose;
    for (int s = 0; s < nstr(); ++s) {
      for (int t = 0; t < nstr(); ++t) {
        if (used[t]) continue;
        Rat d = top[s] - bot[t];
        if (denominator(d) == 1) {
          nu[s] = t;
          delta[s] = static_cast<long>(numerator(d));
          used[t] = true;
          break;
        }
      }
      if (nu[s] < 0) loose.push_back(s);
    }
    std::vector<int> best_nu;
    std::vector<long> best_delta;
    int solutions = 0;
    std::function<void(size_t)> assign = [&](size_t li) {
      if (li == loose.size()) {
        if (solutions == 0) {
          best_nu = nu;
          best_delta = delta;
        }
        ++solutions;
        return;
      }
      int s = loose[li];
      for (int t = 0; t < nstr(); ++t) {
        if (used[t]) continue;
        Int base = rat_floor(top[s] - bot[t]);
        for (Int dd = base; dd <= base + 1; ++dd) {
          Rat moved = bot[t] + Rat(dd);
          bool ok = true;
          for (auto& r : red)
            if (rat_floor(moved - r) != rat_floor(top[s] - r)) ok = false;
          for (int s2 = 0; s2 < nstr() && ok; ++s2) {
            if (s2 == s || nu[s2] < 0) continue;
            Rat moved2 = bot[nu[s2]] + Rat(delta[s2]);
            if (rat_floor(moved - moved2) != rat_floor(top[s] - top[s2])) ok = false;
          }
          if (!ok) continue;
          nu[s] = t;
          delta[s] = static_cast<long>(dd);
          used[t] = true;
          assign(li + 1);
          used[t] = false;
          nu[s] = -1;
        }
      }
    };
    assign(0);
    if (!loose.empty()) {
      if (solutions != 1)
        throw EngineError("excise: track match not unique (" + std::to_string(solutions) + ")");
      nu = best_nu;
      delta = best_delta;
    }
    for (size_t m = hi + 1; m < it.ev.size(); ++m) {
      Ev& e = it.ev[m];
      if (e.kind == 'D') {
        e.a = nu[e.a];
      } else if (e.kind == 'R') {
        long d = delta[e.a];
        e.a = nu[e.a];
        e.k -= d;
      } else {
        long da = delta[e.a], db = delta[e.b];
        int na = nu[e.a], nb = nu[e.b];
        long kk = e.k - da + db;
        if (na > nb) {
          std::swap(na, nb);
          kk = -kk;
        }
        e.a = na;
        e.b = nb;
        e.k = kk;
      }
    }
    std::vector<Rat> nd(nstr());
    for (int s = 0; s < nstr(); ++s) nd[nu[s]] = it.dest[s] - Rat(delta[s]);
    it.dest = nd;
    it.ev.erase(it.ev.begin() + lo, it.ev.begin() + hi + 1);
  }

  std::pair<int, int> cross_labels(const Ev& e) const {
    if (e.kind == 'X') return {label[e.a], label[e.b]};
    return {label[e.a], red_label[e.b]};
  }

  // ---- relations -----------------------------------------------------------

  // bigon at adjacent slices (i, i+1); the item is consumed
  void resolve_bigon(Item it, int i) {
    const Ev e = it.ev[i];
    if (!(it.ev[i + 1] == e)) throw EngineError("bigon slices disagree");
    auto [la, lb] = cross_labels(e);
    if (e.kind == 'X') {
      if (la == lb) return;  // Figure 1(a): zero
      bool any = false;
      for (auto& [p, qq] : q->arrows) {
        if (!((p == la && qq == lb) || (p == lb && qq == la))) continue;
        any = true;
        int starget = (qq == la) ? e.a : e.b;  // strand labelled by the arrow target
        int ssource = (p == la) ? e.a : e.b;
        Item plus = it;
        excise_window(plus, i, i + 1);
        plus.ev.insert(plus.ev.begin() + i, Ev{'D', starget, -1, 0});
        plus.coeff = plus.coeff * CoeffPoly::eta();
        queue.push_back(std::move(plus));
        Item minus = it;
        excise_window(minus, i, i + 1);
        minus.ev.insert(minus.ev.begin() + i, Ev{'D', ssource, -1, 0});
        minus.coeff = minus.coeff * (-CoeffPoly::eta());
        queue.push_back(std::move(minus));
      }
      if (!any) {  // no arrow: free removal
        excise_window(it, i, i + 1);
        queue.push_back(std::move(it));
      }
    } else {
      if (la == lb) {  // Figure 1(c): eta times a dotted strand
        Item dot = it;
        excise_window(dot, i, i + 1);
        dot.ev.insert(dot.ev.begin() + i, Ev{'D', e.a, -1, 0});
        dot.coeff = dot.coeff * CoeffPoly::eta();
        queue.push_back(std::move(dot));
      } else {  // red point of another label: free removal
        excise_window(it, i, i + 1);
        queue.push_back(std::move(it));
      }
    }
  }

  // dot at slice i, crossing at slice i+1 on the dot's strand: move the dot
  // above, spawning the hbar term for a same-label black crossing
  void push_dot_up(Item& it, int i) {
    Ev dot = it.ev[i];
    Ev cr = it.ev[i + 1];
    if (cr.kind == 'X' && label[cr.a] == label[cr.b]) {
      auto lvl = replay(it);
      Rat pa = lvl[i + 1][cr.a];
      Rat pb = lvl[i + 1][cr.b] + Rat(cr.k);
      int left = pa < pb ? cr.a : cr.b;
      Int sign = (dot.a == left) ? 1 : -1;
      Item corr = it;
      corr.coeff = corr.coeff * CoeffPoly::monomial(1, 0, sign);
      corr.ev.erase(corr.ev.begin() + i);
      excise_window(corr, i, i);
      queue.push_back(std::move(corr));
    }
    std::swap(it.ev[i], it.ev[i + 1]);
  }

  // Reidemeister move on three consecutive crossings covering three objects
  // pairwise; reverses their order, spawning the eta*hbar correction exactly
  // in the patterns of Figure 1(d),(e)
  void m4(Item& it, int i) {
    Ev P = it.ev[i], Q = it.ev[i + 1], R = it.ev[i + 2];
    auto lvl = replay(it);
    const Ev& mid = Q;
    if (mid.kind == 'X' && label[mid.a] == label[mid.b]) {
      int lab = label[mid.a];
      int passer_strand = -1, passer_red = -1;
      if (P.kind == 'X')
        passer_strand = (P.a == mid.a || P.a == mid.b) ? P.b : P.a;
      else
        passer_red = P.b;
      long eps = 0;
      if (passer_strand >= 0) {
        int plab = label[passer_strand];
        for (auto& [p, qq] : q->arrows) {
          if (p == plab && qq == lab) eps += 1;
          if (p == lab && qq == plab) eps -= 1;
        }
      } else if (passer_red >= 0 && red_label[passer_red] == lab) {
        eps = 1;  // braid with red, Figure 1(e)
      }
      if (eps != 0) {
        Rat pa = lvl[i + 1][mid.a];
        Rat pb = lvl[i + 1][mid.b] + Rat(mid.k);
        Rat mid_lo = std::min(pa, pb), mid_hi = std::max(pa, pb);
        Rat ppos;
        if (passer_strand >= 0)
          ppos = lvl[i + 1][passer_strand];
        else
          ppos = red[passer_red] + Rat(P.k);
        Rat center = (mid_lo + mid_hi) / 2;
        Int sh = rat_floor(center - ppos + Rat(1, 2));
        Rat prel = ppos + Rat(sh);
        bool passer_left = prel < mid_lo;
        // in this word the passer crossed below the pair crossing, so it sits
        // on its final side while the pair crosses; Fig. 1(d):
        // [passer left] - [passer right] = eps * eta*hbar * (all smoothed)
        Int spawn_sign = passer_left ? Int(eps) : Int(-eps);
        Item corr = it;
        corr.coeff = corr.coeff * CoeffPoly::monomial(1, 1, spawn_sign);
        excise_window(corr, i, i + 2);
        queue.push_back(std::move(corr));
      }
    }
    // rewrite to the reversed order, searching translates validated against
    // the original window end state
    const auto& bot = lvl[i];
    const auto& fin = lvl[i + 3];
    std::vector<Ev> order = {R, Q, P};
    std::vector<Ev> trial(3), best;
    int found = 0;
    std::function<void(int, std::vector<Rat>)> search = [&](int step, std::vector<Rat> pos) {
      if (step == 3) {
        for (int a = 0; a < nstr(); ++a) {
          for (int b = a + 1; b < nstr(); ++b)
            if (rat_floor(pos[a] - pos[b]) != rat_floor(fin[a] - fin[b])) return;
          for (auto& r : red)
            if (rat_floor(pos[a] - r) != rat_floor(fin[a] - r)) return;
        }
        if (found == 0) best = trial;
        ++found;
        return;
      }
      const Ev& e = order[step];
      if (e.kind == 'X') {
        Rat diff = pos[e.a] - pos[e.b];
        for (Int kk = rat_floor(diff); kk <= rat_floor(diff) + 1; ++kk) {
          if (diff == Rat(kk)) continue;
          Ev cand{'X', e.a, e.b, static_cast<long>(kk)};
          auto np = pos;
          try {
            apply_event(np, cand);
          } catch (const EngineError&) {
            continue;
          }
          trial[step] = cand;
          search(step + 1, std::move(np));
        }
      } else {
        Rat diff = pos[e.a] - red[e.b];
        for (Int kk = rat_floor(diff); kk <= rat_floor(diff) + 1; ++kk) {
          if (diff == Rat(kk)) continue;
          Ev cand{'R', e.a, e.b, static_cast<long>(kk)};
          auto np = pos;
          try {
            apply_event(np, cand);
          } catch (const EngineError&) {
            continue;
          }
          trial[step] = cand;
          search(step + 1, std::move(np));
        }
      }
    };
    search(0, bot);
    if (found != 1) throw EngineError("Reidemeister rewrite not unique (" +
                                      std::to_string(found) + " candidates)");
    it.ev[i] = best[0];
    it.ev[i + 1] = best[1];
    it.ev[i + 2] = best[2];
  }

  // ---- bigon phase ----------------------------------------------------------

  bool find_closer(const Item& it, int& partner, int& closer) const {
    std::map<std::tuple<char, int, int, long>, int> last;
    for (int m = 0; m < static_cast<int>(it.ev.size()); ++m) {
      const Ev& e = it.ev[m];
      if (e.kind == 'D') continue;
      auto key = std::make_tuple(e.kind, e.a, e.b, e.k);
      auto f = last.find(key);
      if (f != last.end()) {
        partner = f->second;
        closer = m;
        return true;
      }
      last[key] = m;
    }
    return false;
  }

  static bool same_pair(const Ev& x, const Ev& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }

  // Reorder the crossings in the window [m1, m2] (no dots inside) by
  // commutations and Reidemeister moves until the two marked events sit next
  // to each other, then cancel the bigon. Consumes the item.
  void resolve_closer(Item it, int m1, int m2) {
    // evict dots from the window (their strands have no crossings above them,
    // so these transports are free)
    for (int m = m2 - 1; m > m1; --m) {
      if (it.ev[m].kind != 'D') continue;
      transport_up(it, m, m2);
      --m2;
      ++m;  // rescan this index
    }
    int n = m2 - m1 + 1;
    // BFS over id sequences inside the window
    std::vector<Ev> evs(it.ev.begin() + m1, it.ev.begin() + m2 + 1);
    using Seq = std::vector<int>;
    struct Move {
      int pos;
      bool triple;
    };
    Seq ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    auto adjacent_goal = [&](const Seq& s) {
      for (int i = 0; i + 1 < n; ++i)
        if ((s[i] == 0 && s[i + 1] == n - 1) || (s[i] == n - 1 && s[i + 1] == 0)) return true;
      return false;
    };
    std::map<Seq, std::pair<Seq, Move>> pred;
    std::deque<Seq> bfs;
    bfs.push_back(ident);
    pred[ident] = {ident, {-1, false}};
    Seq goal_state;
    bool okpath = false;
    long explored = 0;
    while (!bfs.empty()) {
      Seq s = bfs.front();
      bfs.pop_front();
      if (adjacent_goal(s)) {
        okpath = true;
        goal_state = s;
        break;
      }
      if (++explored > 500000) throw EngineError("bigon window search exhausted");
      for (int i = 0; i + 1 < n; ++i) {
        if (!shares_strand(evs[s[i]], evs[s[i + 1]])) {
          Seq t = s;
          std::swap(t[i], t[i + 1]);
          if (!pred.count(t)) {
            pred[t] = {s, {i, false}};
            bfs.push_back(t);
          }
        }
      }
      for (int i = 0; i + 2 < n; ++i) {
        std::set<std::pair<char, int>> objs = objects_of(evs[s[i]]);
        for (auto& o : objects_of(evs[s[i + 1]])) objs.insert(o);
        for (auto& o : objects_of(evs[s[i + 2]])) objs.insert(o);
        bool tri = objs.size() == 3 && !same_pair(evs[s[i]], evs[s[i + 1]]) &&
                   !same_pair(evs[s[i + 1]], evs[s[i + 2]]) &&
                   !same_pair(evs[s[i]], evs[s[i + 2]]);
        if (tri) {
          Seq t = s;
          std::swap(t[i], t[i + 2]);
          if (!pred.count(t)) {
            pred[t] = {s, {i, true}};
            bfs.push_back(t);
          }
        }
      }
    }
    if (!okpath) throw EngineError("bigon window is not resolvable");
    std::vector<Move> path;
    for (Seq s = goal_state; pred[s].second.pos != -1; s = pred[s].first)
      path.push_back(pred[s].second);
    std::reverse(path.begin(), path.end());
    Seq state = ident;
    for (auto& mv : path) {
      bump();
      int a = m1 + mv.pos;
      if (!mv.triple) {
        std::swap(it.ev[a], it.ev[a + 1]);
        std::swap(state[mv.pos], state[mv.pos + 1]);
      } else {
        m4(it, a);
        std::swap(state[mv.pos], state[mv.pos + 2]);
      }
    }
    // the two marked events are now adjacent; find and resolve them
    for (int i = 0; i + 1 < n; ++i)
      if ((state[i] == 0 && state[i + 1] == n - 1) || (state[i] == n - 1 && state[i + 1] == 0)) {
        resolve_bigon(std::move(it), m1 + i);
        return;
      }
    throw EngineError("bigon adjacency lost");
  }

  // ---- canonical ordering ---------------------------------------------------

  // crossing sequence of the straight-line diagram between the given lifts,
  // in height order with an exact first-order tie-break
  std::vector<Ev> straight_events(const std::vector<Rat>& b, const std::vector<Rat>& e) const {
    struct CE {
      Rat time, slope;
      Ev ev;
    };
    std::vector<CE> v;
    for (int s = 0; s < nstr(); ++s) {
      for (int t = s + 1; t < nstr(); ++t) {
        Rat d0 = b[s] - b[t], d1 = e[s] - e[t];
        if (d0 == d1) continue;
        Int lo = rat_floor(std::min(d0, d1)), hi = rat_floor(std::max(d0, d1));
        for (Int k = lo + 1; k <= hi; ++k)
          v.push_back({(d0 - Rat(k)) / (d0 - d1), Rat(s - t) / (d0 - d1),
                       Ev{'X', s, t, static_cast<long>(k)}});
      }
      for (size_t r = 0; r < red.size(); ++r) {
        Rat d0 = b[s] - red[r], d1 = e[s] - red[r];
        if (d0 == d1) continue;
        Int lo = rat_floor(std::min(d0, d1)), hi = rat_floor(std::max(d0, d1));
        for (Int k = lo + 1; k <= hi; ++k)
          v.push_back({(d0 - Rat(k)) / (d0 - d1), Rat(s + 1) / (d0 - d1),
                       Ev{'R', s, static_cast<int>(r), static_cast<long>(k)}});
      }
    }
    std::stable_sort(v.begin(), v.end(), [](const CE& x, const CE& y) {
      if (x.time != y.time) return x.time < y.time;
      if (x.slope != y.slope) return x.slope < y.slope;
      return x.ev < y.ev;
    });
    std::vector<Ev> outv;
    for (auto& c : v) outv.push_back(c.ev);
    return outv;
  }

  // reorder the crossings of a defect-free item into the canonical sequence;
  // BFS over commutation and Reidemeister moves, then replay the move path
  // on the item (spawning the braid corrections where they apply)
  void sort_to_canonical(Item& it) {
    std::vector<Ev> canon = straight_events(it.start, it.dest);
    std::vector<Ev> cur;
    for (auto& e : it.ev)
      if (e.kind != 'D') cur.push_back(e);
    if (canon.size() != cur.size()) throw EngineError("canonical crossing set mismatch");
    int n = static_cast<int>(cur.size());
    if (n == 0) return;
    // goal permutation: canonical position -> current event id
    std::vector<int> goal(n, -1);
    {
      std::vector<bool> used(n, false);
      for (int p = 0; p < n; ++p) {
        for (int i = 0; i < n; ++i)
          if (!used[i] && cur[i] == canon[p]) {
            goal[p] = i;
            used[i] = true;
            break;
          }
        if (goal[p] < 0) throw EngineError("canonical event missing from item");
      }
    }
    std::vector<int> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    if (goal == ident) return;
    // BFS on id sequences; sharing and triangle tests depend only on strands
    using Seq = std::vector<int>;
    struct Move {
      int pos;
      bool triple;
    };
    std::map<Seq, std::pair<Seq, Move>> pred;
    std::deque<Seq> bfs;
    bfs.push_back(ident);
    pred[ident] = {ident, {-1, false}};
    bool okpath = false;
    long explored = 0;
    while (!bfs.empty()) {
      Seq s = bfs.front();
      bfs.pop_front();
      if (s == goal) {
        okpath = true;
        break;
      }
      if (++explored > 500000) throw EngineError("canonical reorder search exhausted");
      for (int i = 0; i + 1 < n; ++i) {
        if (!shares_strand(cur[s[i]], cur[s[i + 1]])) {
          Seq t = s;
          std::swap(t[i], t[i + 1]);
          if (!pred.count(t)) {
            pred[t] = {s, {i, false}};
            bfs.push_back(t);
          }
        }
      }
      for (int i = 0; i + 2 < n; ++i) {
        std::set<std::pair<char, int>> objs = objects_of(cur[s[i]]);
        for (auto& o : objects_of(cur[s[i + 1]])) objs.insert(o);
        for (auto& o : objects_of(cur[s[i + 2]])) objs.insert(o);
        bool tri = objs.size() == 3 && !same_pair(cur[s[i]], cur[s[i + 1]]) &&
                   !same_pair(cur[s[i + 1]], cur[s[i + 2]]) &&
                   !same_pair(cur[s[i]], cur[s[i + 2]]);
        if (tri) {
          Seq t = s;
          std::swap(t[i], t[i + 2]);
          if (!pred.count(t)) {
            pred[t] = {s, {i, true}};
            bfs.push_back(t);
          }
        }
      }
    }
    if (!okpath) throw EngineError("no reorder path to canonical form");
    std::vector<Move> path;
    for (Seq s = goal; pred[s].second.pos != -1; s = pred[s].first)
      path.push_back(pred[s].second);
    std::reverse(path.begin(), path.end());
    for (auto& mv : path) {
      bump();
      std::vector<int> ci;
      for (int m = 0; m < static_cast<int>(it.ev.size()); ++m)
        if (it.ev[m].kind != 'D') ci.push_back(m);
      if (!mv.triple) {
        int a = ci[mv.pos], b = ci[mv.pos + 1];
        transport_down(it, b, a + 1);
        // a and a+1 are now the two crossings; swap them directly
        std::swap(it.ev[a], it.ev[a + 1]);
      } else {
        int a = ci[mv.pos], b = ci[mv.pos + 1], c = ci[mv.pos + 2];
        transport_down(it, b, a + 1);
        // after the first transport the third crossing kept its slice index
        transport_down(it, c, a + 2);
        m4(it, a);
      }
    }
    validate(it);
  }

  // ---- main loop -------------------------------------------------------------

  void run() {
    while (!queue.empty()) {
      Item it = std::move(queue.front());
      queue.pop_front();
      if (it.coeff.is_zero()) continue;
      process(std::move(it));
    }
  }

  void process(Item it) {
    // dots to the top first, so bigon windows contain only crossings
    while (true) {
      bump();
      int dslice = -1, cslice = -1;
      for (int m = 0; m < static_cast<int>(it.ev.size()) && dslice < 0; ++m) {
        if (it.ev[m].kind != 'D') continue;
        for (int c = m + 1; c < static_cast<int>(it.ev.size()); ++c)
          if (it.ev[c].kind != 'D' && involves(it.ev[c], it.ev[m].a)) {
            dslice = m;
            cslice = c;
            break;
          }
      }
      if (dslice < 0) break;
      for (int m = dslice; m < cslice - 1; ++m) std::swap(it.ev[m], it.ev[m + 1]);
      push_dot_up(it, cslice - 1);
    }
    // resolve the lowest bigon; the pieces re-enter through the queue
    {
      int partner, closer;
      if (find_closer(it, partner, closer)) {
        resolve_closer(std::move(it), partner, closer);
        return;
      }
    }
    sort_to_canonical(it);
    emit(it);
  }

  void emit(const Item& it) {
    validate(it);
    std::vector<int> w(nstr(), 0);
    for (auto& e : it.ev)
      if (e.kind == 'D') w[e.a]++;
    DiagramKey key;
    for (int s = 0; s < nstr(); ++s) {
      int lab = label[s];
      Rat frac = rat_mod1(it.dest[s]);
      int to = -1;
      for (int a = 0; a < q->dims[lab]; ++a)
        if (tgt.black[lab][a].value == frac) {
          to = a;
          break;
        }
      if (to < 0) throw EngineError("destination does not match the target configuration");
      key.strands.push_back(
          {lab, src_idx[s], to, static_cast<int>(static_cast<long>(rat_floor(it.dest[s]))), w[s]});
    }
    std::sort(key.strands.begin(), key.strands.end());
    out.add_term(key, it.coeff);
  }

  // ---- item construction -------------------------------------------------------

  // stack canonical diagrams bottom-up into one item
  Item stack_diagrams(const std::vector<const TautDiagram*>& ds, const CoeffPoly& coeff) {
    Item it;
    it.coeff = coeff;
    it.start.resize(nstr());
    for (int s = 0; s < nstr(); ++s) it.start[s] = src.black[label[s]][src_idx[s]].value;
    std::vector<Rat> lift = it.start;
    std::vector<std::vector<int>> slot(q->num_nodes());
    for (int i = 0; i < q->num_nodes(); ++i) slot[i].assign(q->dims[i], -1);
    for (int s = 0; s < nstr(); ++s) slot[label[s]][src_idx[s]] = s;
    for (auto* dp : ds) {
      const TautDiagram& d = *dp;
      std::vector<Rat> b(nstr()), e(nstr());
      std::vector<std::vector<int>> nslot(q->num_nodes());
      for (int i = 0; i < q->num_nodes(); ++i) nslot[i].assign(q->dims[i], -1);
      std::vector<Ev> dots;  // each story carries its dots at its own top
      for (int ls = 0; ls < static_cast<int>(d.key.strands.size()); ++ls) {
        auto& st = d.key.strands[ls];
        int g = slot[st.label][st.from];
        if (g < 0) throw EngineError("stack: slot mismatch");
        Rat offset = lift[g] - d.bottom_lift(ls);
        if (denominator(offset) != 1) throw EngineError("stack: non-integer story offset");
        b[g] = lift[g];
        e[g] = d.top_lift(ls) + offset;
        nslot[st.label][st.to] = g;
        for (int ww = 0; ww < st.weight; ++ww) dots.push_back(Ev{'D', g, -1, 0});
      }
      for (auto& ev : straight_events(b, e)) it.ev.push_back(ev);
      for (auto& dt : dots) it.ev.push_back(dt);
      lift = e;
      slot = nslot;
    }
    it.dest = lift;
    return it;
  }
};

}  // namespace

// ---------------------------------------------------------------- public ops

Word slice_diagram(const TautDiagram& d) {
  Word w;
  w.source = d.source;
  Engine eng(d.source, d.target);
  int n = eng.nstr();
  std::vector<Rat> b(n), e(n);
  for (int s = 0; s < n; ++s) {
    b[s] = d.bottom_lift(s);
    e[s] = d.top_lift(s);
  }
  auto evs = eng.straight_events(b, e);
  // frozen realization: slots follow strands, each step an explicit diagram
  Configuration cur = d.source;
  std::vector<Rat> pos = b;
  std::vector<int> at_idx(n);
  for (int s = 0; s < n; ++s) at_idx[s] = eng.src_idx[s];
  auto make_step = [&](const std::vector<Rat>& npos) {
    Configuration t = cur;
    for (int s = 0; s < n; ++s) t.black[eng.label[s]][at_idx[s]] = Angle(npos[s]);
    DiagramKey k;
    for (int s = 0; s < n; ++s) {
      // step lift runs from frac(pos) to frac(pos) + (npos - pos)
      Rat top = rat_mod1(pos[s]) + (npos[s] - pos[s]);
      int wnd = static_cast<int>(static_cast<long>(rat_floor(top)));
      k.strands.push_back({eng.label[s], at_idx[s], at_idx[s], wnd, 0});
    }
    TautDiagram st = make_taut(cur, t, k);
    cur = t;
    pos = npos;
    return st;
  };
  for (auto& ev : evs) {
    auto npos = pos;
    eng.apply_event(npos, ev);
    w.steps.push_back(make_step(npos));
  }
  // terminal isotopy to the true target configuration
  {
    Configuration t = d.target;
    DiagramKey k;
    for (int s = 0; s < n; ++s) {
      int to = -1;
      for (auto& st : d.key.strands)
        if (st.label == eng.label[s] && st.from == eng.src_idx[s]) to = st.to;
      Rat tgt_angle = d.target.black[eng.label[s]][to].value;
      // this step travels from frac(pos) to the true target lift
      Rat top = rat_mod1(pos[s]) + (e[s] - pos[s]);
      int wnd = static_cast<int>(static_cast<long>(rat_floor(top - tgt_angle)));
      k.strands.push_back({eng.label[s], at_idx[s], to, wnd, 0});
    }
    TautDiagram st = make_taut(cur, t, k);
    w.steps.push_back(st);
    cur = t;
  }
  // dots on top
  for (auto& st : d.key.strands)
    for (int i = 0; i < st.weight; ++i) w.steps.push_back(dot_step(cur, st.label, st.to));
  return w;
}

Morphism normal_form(const Word& w) {
  w.validate();
  const Configuration& tgt = w.target();
  Engine eng(w.source, tgt);
  std::vector<const TautDiagram*> ptrs;
  for (auto& s : w.steps) ptrs.push_back(&s);
  Item it = eng.stack_diagrams(ptrs, CoeffPoly::unit());
  eng.queue.push_back(std::move(it));
  eng.run();
  return eng.out;
}

Morphism compose_stack(const std::vector<const TautDiagram*>& stories, const CoeffPoly& coeff) {
  if (stories.empty()) throw Error(Err::BadInput, "empty stack");
  Engine eng(stories.front()->source, stories.back()->target);
  Item it = eng.stack_diagrams(stories, coeff);
  eng.queue.push_back(std::move(it));
  eng.run();
  return eng.out;
}

Morphism compose(const Morphism& m23, const Morphism& m12) {
  if (!(m12.target == m23.source))
    throw Error(Err::MismatchedConfigurations, "compose: middle configurations differ");
  Morphism acc = Morphism::zero(m12.source, m23.target);
  for (auto& [k12, c12] : m12.terms)
    for (auto& [k23, c23] : m23.terms) {
      TautDiagram d12{m12.source, m12.target, k12};
      TautDiagram d23{m23.source, m23.target, k23};
      Engine eng(m12.source, m23.target);
      Item it = eng.stack_diagrams({&d12, &d23}, c12 * c23);
      eng.queue.push_back(std::move(it));
      eng.run();
      acc = acc + eng.out;
    }
  return acc;
}

Morphism oracle_compose(const TautDiagram& d12, const TautDiagram& d23) {
  Concatenation c = concatenate(d12, d23);
  for (auto& b : c.bigons)
    if (b.kind == BigonKind::SameLabel || b.kind == BigonKind::Adjacent ||
        b.kind == BigonKind::RedBlack)
      return Morphism::zero(d12.source, d23.target);
  TautDiagram d = make_taut(d12.source, d23.target, c.stacked);
  return Morphism::of(d);
}

Morphism specialize(const Morphism& m, std::optional<Int> hv, std::optional<Int> ev) {
  Morphism r = Morphism::zero(m.source, m.target);
  for (auto& [k, c] : m.terms) r.add_term(k, c.specialized(hv, ev));
  return r;
}

std::pair<long, std::vector<long>> filtration_level(const Morphism& m) {
  long mx = 0;
  std::vector<long> per(m.source.quiver.num_nodes(), 0);
  for (auto& [k, c] : m.terms) {
    TautDiagram d{m.source, m.target, k};
    CrossingReport r = crossings(d);
    mx = std::max(mx, r.total_black_same());
    auto v = r.per_label(m.source.quiver.num_nodes());
    for (size_t i = 0; i < v.size(); ++i) per[i] = std::max(per[i], v[i]);
  }
  return {mx, per};
}

Morphism graded_compose(const Morphism& m23, const Morphism& m12) {
  auto l12 = filtration_level(m12).second;
  auto l23 = filtration_level(m23).second;
  Morphism c = compose(m23, m12);
  Morphism r = Morphism::zero(c.source, c.target);
  for (auto& [k, cf] : c.terms) {
    TautDiagram d{c.source, c.target, k};
    auto v = crossings(d).per_label(c.source.quiver.num_nodes());
    bool keep = true;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] < l12[i] + l23[i]) keep = false;
    if (keep) r.add_term(k, cf);
  }
  return r;
}

std::string morphism_str(const Morphism& m) {
  if (m.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : m.terms) {
    if (!first) os << "\n";
    first = false;
    TautDiagram d{m.source, m.target, k};
    os << "(" << c.str() << ") * [" << diagram_str(d) << "]";
  }
  return os.str();
}

}  // namespace klrw
