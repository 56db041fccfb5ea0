#pragma once

#include "klrw/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace klrw {

// A framed quiver: directed graph without loops or multiple edges, a
// dimension d_i and a framing multiplicity m_i for every node.  Node order
// is declaration order and fixes every "deterministic ordering" contract.
struct Quiver {
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> arrows;  // (source, target) node indices
  std::vector<int> dims;
  std::vector<int> framings;

  int node_index(const std::string& name) const;
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  bool has_arrow(int i, int j) const;        // arrow i -> j present?
  int arrows_between(int i, int j) const;    // arrows i->j plus j->i
  bool operator==(const Quiver&) const = default;
};

struct RawQuiver {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> arrows;
  std::map<std::string, int> dims;
  std::map<std::string, int> framings;
};

Quiver validate_quiver(const RawQuiver& raw);

// Exact angle on the unit circle, as a fraction of a full turn in [0,1).
struct Angle {
  Rat value;

  Angle() : value(0) {}
  explicit Angle(Rat v) : value(rat_mod1(std::move(v))) {}
  static Angle of(long num, long den) { return Angle(Rat(num, den)); }
  auto operator<=>(const Angle&) const = default;
};

// Red and black marked points of a quiver on the circle.  All points are
// pairwise distinct; black points of different labels may not collide
// either (inputs violating this are rejected, never perturbed).
struct Configuration {
  Quiver quiver;
  std::vector<std::vector<Angle>> red;    // red[i][beta]
  std::vector<std::vector<Angle>> black;  // black[i][alpha]

  bool operator==(const Configuration&) const = default;
  bool same_red(const Configuration& o) const {
    return quiver == o.quiver && red == o.red;
  }
  int total_black() const;
};

Configuration validate_configuration(const Quiver& q,
                                     const std::vector<std::vector<Angle>>& red,
                                     const std::vector<std::vector<Angle>>& black);

// Element of the character lattice of T = prod_i (C*)^{d_i}, sparse.
struct WeightVector {
  std::map<std::pair<int, int>, long> entries;  // (node, index) -> coefficient

  long pairing(const std::vector<std::vector<long>>& cochar) const;
  WeightVector& add(int node, int idx, long c);
  bool operator==(const WeightVector&) const = default;
  auto operator<=>(const WeightVector&) const = default;
};

// One weight of the matter representation.  `framing` tags the deformed
// factor (1 - a_{i,beta} y^{-xi}) when the weight comes from a framing edge.
struct MatterWeight {
  WeightVector xi;
  std::optional<std::pair<int, int>> framing;  // (node, beta)
  int arrow = -1;                              // owning internal arrow, or -1
};

struct MatterWeights {
  std::vector<MatterWeight> internal_weights;  // per (arrow, alpha_src, alpha_tgt)
  std::vector<MatterWeight> framing_weights;   // per (node, alpha, beta)
};

// Weights of N = N_B + N_F: an arrow i->j contributes, for each index pair,
// the character of y_{j,a_j}/y_{i,a_i}; a framing edge [i]->(i) contributes
// e_{i,alpha} tagged with the framing coordinate a_{i,beta}.
MatterWeights matter_weights(const Quiver& q);

}  // namespace klrw
