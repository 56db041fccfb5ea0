#include "klrw/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace klrw {

Rat TautDiagram::bottom_lift(int s) const {
  auto& st = key.strands[s];
  return source.black[st.label][st.from].value;
}

Rat TautDiagram::top_lift(int s) const {
  auto& st = key.strands[s];
  return target.black[st.label][st.to].value + st.wind;
}

long CrossingReport::total_black_same() const {
  long t = 0;
  for (auto& [i, c] : same_label) t += c;
  return t;
}

std::vector<long> CrossingReport::per_label(int nodes) const {
  std::vector<long> v(nodes, 0);
  for (auto& [i, c] : same_label) v[i] = c;
  return v;
}

TautDiagram make_taut(const Configuration& source, const Configuration& target,
                      const DiagramKey& matching) {
  if (!source.same_red(target))
    throw Error(Err::MismatchedConfigurations, "source and target disagree on quiver or red points");
  const Quiver& q = source.quiver;
  // per label, the matching must be a bijection with valid indices
  std::vector<std::vector<int>> hit_from(q.num_nodes()), hit_to(q.num_nodes());
  for (int i = 0; i < q.num_nodes(); ++i) {
    hit_from[i].assign(q.dims[i], 0);
    hit_to[i].assign(q.dims[i], 0);
  }
  for (auto& st : matching.strands) {
    if (st.label < 0 || st.label >= q.num_nodes())
      throw Error(Err::IndexOutOfRange, "strand label out of range");
    if (st.from < 0 || st.from >= q.dims[st.label] || st.to < 0 || st.to >= q.dims[st.label])
      throw Error(Err::IndexOutOfRange, "strand endpoint index out of range");
    if (st.weight < 0) throw Error(Err::IndexOutOfRange, "negative weight");
    hit_from[st.label][st.from]++;
    hit_to[st.label][st.to]++;
  }
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a)
      if (hit_from[i][a] != 1 || hit_to[i][a] != 1)
        throw Error(Err::NotABijection, "matching is not a bijection on node '" + q.nodes[i] + "'");
  TautDiagram d{source, target, matching};
  std::sort(d.key.strands.begin(), d.key.strands.end());
  return d;
}

TautDiagram identity_diagram(const Configuration& c) {
  DiagramKey k;
  for (int i = 0; i < c.quiver.num_nodes(); ++i)
    for (int a = 0; a < c.quiver.dims[i]; ++a) k.strands.push_back({i, a, a, 0, 0});
  return make_taut(c, c, k);
}

namespace {

// crossings between straight strands s (bs->es) and t (bt->et), over all translates
long pair_crossings(const Rat& bs, const Rat& es, const Rat& bt, const Rat& et) {
  return integers_between(bs - bt, es - et);
}

}  // namespace

CrossingReport crossings(const TautDiagram& d) {
  CrossingReport r;
  const Quiver& q = d.source.quiver;
  int n = static_cast<int>(d.key.strands.size());
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      long c = pair_crossings(d.bottom_lift(s), d.top_lift(s), d.bottom_lift(t), d.top_lift(t));
      if (c == 0) continue;
      int li = d.key.strands[s].label, lj = d.key.strands[t].label;
      if (li == lj) {
        r.same_label[li] += c;
      } else {
        bool any = false;
        for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
          auto [p, qq] = q.arrows[a];
          if ((p == li && qq == lj) || (p == lj && qq == li)) {
            r.adjacent[a] += c;
            any = true;
          }
        }
        if (!any) r.unrelated += c;
      }
    }
  for (int s = 0; s < n; ++s) {
    int li = d.key.strands[s].label;
    for (int j = 0; j < q.num_nodes(); ++j)
      for (auto& rp : d.source.red[j]) {
        long c = integers_between(d.bottom_lift(s) - rp.value, d.top_lift(s) - rp.value);
        if (c == 0) continue;
        if (li == j)
          r.red_black[j] += c;
        else
          r.unrelated += c;
      }
  }
  return r;
}

Concatenation concatenate(const TautDiagram& d12, const TautDiagram& d23) {
  if (!(d12.target == d23.source))
    throw Error(Err::MismatchedConfigurations, "concatenate: middle configurations differ");
  const Quiver& q = d12.source.quiver;
  Concatenation out;
  int n = static_cast<int>(d12.key.strands.size());
  // composite paths: bottom, middle, top lifts per d12-strand
  std::vector<Rat> B(n), M(n), E(n);
  std::vector<int> upper(n);  // index of the continuing d23 strand
  for (int s = 0; s < n; ++s) {
    auto& st = d12.key.strands[s];
    B[s] = d12.bottom_lift(s);
    M[s] = d12.top_lift(s);
    int u = -1;
    for (int t = 0; t < n; ++t) {
      auto& su = d23.key.strands[t];
      if (su.label == st.label && su.from == st.to) {
        u = t;
        break;
      }
    }
    upper[s] = u;
    auto& su = d23.key.strands[u];
    E[s] = d23.target.black[su.label][su.to].value + su.wind + st.wind;
    out.stacked.strands.push_back(
        {st.label, st.from, su.to, st.wind + su.wind, st.weight + su.weight});
  }
  std::sort(out.stacked.strands.begin(), out.stacked.strands.end());
  // black-black bigons: double sign change across the middle configuration
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      Rat b = B[s] - B[t], m = M[s] - M[t], e = E[s] - E[t];
      Int klo = rat_floor(std::min({b, m, e})), khi = rat_floor(std::max({b, m, e}));
      for (Int k = klo; k <= khi + 1; ++k) {
        Rat kk(k);
        bool sb = b > kk, sm = m > kk, se = e > kk;
        if (sb == se && sb != sm) {
          Bigon bg;
          bg.strand_a = s;
          bg.strand_b = t;
          int li = d12.key.strands[s].label, lj = d12.key.strands[t].label;
          if (li == lj)
            bg.kind = BigonKind::SameLabel;
          else {
            bg.kind = BigonKind::Unrelated;
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
              auto [p, qq] = q.arrows[a];
              if ((p == li && qq == lj) || (p == lj && qq == li)) {
                bg.kind = BigonKind::Adjacent;
                bg.arrow = a;
                break;
              }
            }
          }
          out.bigons.push_back(bg);
        }
      }
    }
  // red bigons
  for (int s = 0; s < n; ++s) {
    int li = d12.key.strands[s].label;
    for (int j = 0; j < q.num_nodes(); ++j)
      for (int bi = 0; bi < static_cast<int>(d12.source.red[j].size()); ++bi) {
        Rat rp = d12.source.red[j][bi].value;
        Rat b = B[s] - rp, m = M[s] - rp, e = E[s] - rp;
        Int klo = rat_floor(std::min({b, m, e})), khi = rat_floor(std::max({b, m, e}));
        for (Int k = klo; k <= khi + 1; ++k) {
          Rat kk(k);
          bool sb = b > kk, sm = m > kk, se = e > kk;
          if (sb == se && sb != sm) {
            Bigon bg;
            bg.strand_a = s;
            bg.red_node = j;
            bg.red_idx = bi;
            bg.kind = li == j ? BigonKind::RedBlack : BigonKind::UnrelatedRed;
            out.bigons.push_back(bg);
          }
        }
      }
  }
  return out;
}

std::vector<TautDiagram> enumerate_taut(const Configuration& source,
                                        const Configuration& target, int max_wind,
                                        int max_weight, long max_cross) {
  const Quiver& q = source.quiver;
  if (!source.same_red(target))
    throw Error(Err::MismatchedConfigurations, "enumerate: configurations disagree");
  // per label: all bijections realized as permutations in lexicographic order
  std::vector<std::vector<std::vector<int>>> perms(q.num_nodes());
  for (int i = 0; i < q.num_nodes(); ++i) {
    std::vector<int> p(q.dims[i]);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms[i].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<TautDiagram> out;
  // odometer over (permutation choice per label, winding and weight per strand)
  std::vector<int> pidx(q.num_nodes(), 0);
  int total = source.total_black();
  auto emit_windings = [&]() {
    DiagramKey base;
    for (int i = 0; i < q.num_nodes(); ++i)
      for (int a = 0; a < q.dims[i]; ++a)
        base.strands.push_back({i, a, perms[i][pidx[i]][a], 0, 0});
    std::vector<int> wind(total, -max_wind), weight(total, 0);
    while (true) {
      DiagramKey k = base;
      for (int s = 0; s < total; ++s) {
        k.strands[s].wind = wind[s];
        k.strands[s].weight = weight[s];
      }
      TautDiagram d = make_taut(source, target, k);
      if (max_cross < 0 || crossings(d).total_black_same() <= max_cross) out.push_back(d);
      // advance weights, then windings
      int s = 0;
      for (; s < total; ++s) {
        if (weight[s] < max_weight) {
          weight[s]++;
          break;
        }
        weight[s] = 0;
      }
      if (s < total) continue;
      for (s = 0; s < total; ++s) {
        if (wind[s] < max_wind) {
          wind[s]++;
          break;
        }
        wind[s] = -max_wind;
      }
      if (s == total) break;
    }
  };
  while (true) {
    emit_windings();
    int i = 0;
    for (; i < q.num_nodes(); ++i) {
      if (pidx[i] + 1 < static_cast<int>(perms[i].size())) {
        pidx[i]++;
        break;
      }
      pidx[i] = 0;
    }
    if (i == q.num_nodes()) break;
  }
  return out;
}

long q_grading_x2(const TautDiagram& d) {
  CrossingReport r = crossings(d);
  long w = 0;
  for (auto& st : d.key.strands) w += st.weight;
  long adj = 0, red = 0;
  for (auto& [a, c] : r.adjacent) adj += c;
  for (auto& [i, c] : r.red_black) red += c;
  return 2 * w - 2 * r.total_black_same() + adj + red;
}

Rat reference_angle(const TautDiagram& d) {
  Rat mx(0);
  auto upd = [&](const Configuration& c) {
    for (auto& v : c.red)
      for (auto& a : v) mx = std::max(mx, a.value);
    for (auto& v : c.black)
      for (auto& a : v) mx = std::max(mx, a.value);
  };
  upd(d.source);
  upd(d.target);
  return (mx + 1) / 2;
}

std::map<int, long> qi_winding(const TautDiagram& d) {
  Rat ref = reference_angle(d);
  std::map<int, long> out;
  for (int i = 0; i < d.source.quiver.num_nodes(); ++i) out[i] = 0;
  for (int s = 0; s < static_cast<int>(d.key.strands.size()); ++s) {
    Int c = rat_floor(d.top_lift(s) - ref) - rat_floor(d.bottom_lift(s) - ref);
    out[d.key.strands[s].label] += static_cast<long>(c);
  }
  return out;
}

std::string diagram_str(const TautDiagram& d) {
  std::ostringstream os;
  const Quiver& q = d.source.quiver;
  bool first = true;
  for (auto& st : d.key.strands) {
    if (!first) os << "; ";
    first = false;
    os << "(" << q.nodes[st.label] << ")" << st.from + 1 << "->" << st.to + 1;
    if (st.wind != 0) os << " w" << (st.wind > 0 ? "+" : "") << st.wind;
    if (st.weight != 0) os << " d" << st.weight;
  }
  if (first) os << "(empty)";
  return os.str();
}

}  // namespace klrw
