#include "klrw/quiver.hpp"

#include <algorithm>
#include <set>

namespace klrw {

int Quiver::node_index(const std::string& name) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[i] == name) return i;
  throw Error(Err::UnknownNode, "unknown node '" + name + "'");
}

bool Quiver::has_arrow(int i, int j) const {
  for (auto& a : arrows)
    if (a.first == i && a.second == j) return true;
  return false;
}

int Quiver::arrows_between(int i, int j) const {
  return (has_arrow(i, j) ? 1 : 0) + (has_arrow(j, i) ? 1 : 0);
}

Quiver validate_quiver(const RawQuiver& raw) {
  Quiver q;
  q.nodes = raw.nodes;
  {
    std::set<std::string> seen;
    for (auto& n : q.nodes)
      if (!seen.insert(n).second)
        throw Error(Err::DuplicateEdge, "node '" + n + "' declared twice");
  }
  auto idx = [&](const std::string& n) {
    auto it = std::find(q.nodes.begin(), q.nodes.end(), n);
    if (it == q.nodes.end())
      throw Error(Err::UnknownNode, "arrow endpoint '" + n + "' is not a declared node");
    return static_cast<int>(it - q.nodes.begin());
  };
  std::set<std::pair<int, int>> seen_arrows;
  for (auto& [s, t] : raw.arrows) {
    int i = idx(s), j = idx(t);
    if (i == j) throw Error(Err::LoopEdge, "loop at node '" + s + "'");
    if (!seen_arrows.insert({i, j}).second)
      throw Error(Err::DuplicateEdge, "duplicate arrow " + s + " -> " + t);
    q.arrows.push_back({i, j});
  }
  q.dims.resize(q.nodes.size());
  q.framings.resize(q.nodes.size());
  for (int i = 0; i < q.num_nodes(); ++i) {
    auto d = raw.dims.find(q.nodes[i]);
    if (d == raw.dims.end())
      throw Error(Err::UnknownNode, "missing dimension for node '" + q.nodes[i] + "'");
    if (d->second < 0)
      throw Error(Err::NegativeDimension, "negative dimension at node '" + q.nodes[i] + "'");
    q.dims[i] = d->second;
    auto f = raw.framings.find(q.nodes[i]);
    int m = (f == raw.framings.end()) ? 0 : f->second;
    if (m < 0)
      throw Error(Err::NegativeDimension, "negative framing at node '" + q.nodes[i] + "'");
    q.framings[i] = m;
  }
  for (auto& [n, _] : raw.dims) (void)idx(n);
  for (auto& [n, _] : raw.framings) (void)idx(n);
  return q;
}

int Configuration::total_black() const {
  int n = 0;
  for (auto& v : black) n += static_cast<int>(v.size());
  return n;
}

Configuration validate_configuration(const Quiver& q,
                                     const std::vector<std::vector<Angle>>& red,
                                     const std::vector<std::vector<Angle>>& black) {
  if (static_cast<int>(red.size()) != q.num_nodes() ||
      static_cast<int>(black.size()) != q.num_nodes())
    throw Error(Err::IndexOutOfRange, "red/black maps must cover every node");
  for (int i = 0; i < q.num_nodes(); ++i) {
    if (static_cast<int>(red[i].size()) != q.framings[i])
      throw Error(Err::IndexOutOfRange,
                  "node '" + q.nodes[i] + "' needs " + std::to_string(q.framings[i]) +
                      " red points, got " + std::to_string(red[i].size()));
    if (static_cast<int>(black[i].size()) != q.dims[i])
      throw Error(Err::IndexOutOfRange,
                  "node '" + q.nodes[i] + "' needs " + std::to_string(q.dims[i]) +
                      " black points, got " + std::to_string(black[i].size()));
  }
  std::map<Rat, std::string> where;
  for (int i = 0; i < q.num_nodes(); ++i)
    for (size_t b = 0; b < red[i].size(); ++b) {
      auto [it, fresh] = where.insert({red[i][b].value, "red " + q.nodes[i]});
      if (!fresh)
        throw Error(Err::RedCollision, "red point of node '" + q.nodes[i] +
                                           "' collides with " + it->second);
    }
  for (int i = 0; i < q.num_nodes(); ++i)
    for (size_t a = 0; a < black[i].size(); ++a) {
      auto it = where.find(black[i][a].value);
      if (it != where.end()) {
        bool on_red = it->second.rfind("red", 0) == 0;
        throw Error(on_red ? Err::BlackOnRed : Err::BlackCollision,
                    "black point of node '" + q.nodes[i] + "' collides with " + it->second);
      }
      where.insert({black[i][a].value, "black " + q.nodes[i]});
    }
  return Configuration{q, red, black};
}

long WeightVector::pairing(const std::vector<std::vector<long>>& cochar) const {
  long s = 0;
  for (auto& [k, c] : entries) s += c * cochar[k.first][k.second];
  return s;
}

WeightVector& WeightVector::add(int node, int idx, long c) {
  auto key = std::make_pair(node, idx);
  long v = (entries.count(key) ? entries[key] : 0) + c;
  if (v == 0)
    entries.erase(key);
  else
    entries[key] = v;
  return *this;
}

MatterWeights matter_weights(const Quiver& q) {
  MatterWeights out;
  for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
    auto [i, j] = q.arrows[a];
    for (int ai = 0; ai < q.dims[i]; ++ai)
      for (int aj = 0; aj < q.dims[j]; ++aj) {
        MatterWeight w;
        w.xi.add(j, aj, 1).add(i, ai, -1);  // character of y_{j,aj}/y_{i,ai}
        w.arrow = a;
        out.internal_weights.push_back(std::move(w));
      }
  }
  for (int i = 0; i < q.num_nodes(); ++i)
    for (int a = 0; a < q.dims[i]; ++a)
      for (int b = 0; b < q.framings[i]; ++b) {
        MatterWeight w;
        w.xi.add(i, a, 1);
        w.framing = std::make_pair(i, b);
        out.framing_weights.push_back(std::move(w));
      }
  return out;
}

}  // namespace klrw
