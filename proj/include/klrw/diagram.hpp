#pragma once

#include "klrw/quiver.hpp"

#include <map>
#include <vector>

namespace klrw {

// One strand of a cylindrical diagram: matches the `from`-th black point of
// its label at the bottom to the `to`-th at the top, winding `wind` extra
// full turns, carrying `weight` dots.
struct StrandData {
  int label;
  int from;
  int to;
  int wind;
  int weight;

  auto key() const { return std::tie(label, from, to, wind, weight); }
  bool operator==(const StrandData& o) const { return key() == o.key(); }
  bool operator<(const StrandData& o) const { return key() < o.key(); }
};

// Canonical matching data of a taut diagram (strands sorted by label, from).
struct DiagramKey {
  std::vector<StrandData> strands;
  bool operator==(const DiagramKey&) const = default;
  bool operator<(const DiagramKey& o) const { return strands < o.strands; }
};

// The canonical representative of a weighted taut strand diagram: each strand
// drawn as the straight line between its endpoint lifts.
struct TautDiagram {
  Configuration source, target;
  DiagramKey key;

  // lifted endpoints of strand s (in the order of key.strands)
  Rat bottom_lift(int s) const;
  Rat top_lift(int s) const;
  bool operator==(const TautDiagram&) const = default;
};

struct CrossingReport {
  std::map<int, long> same_label;  // node -> count
  std::map<int, long> adjacent;    // arrow index -> count
  std::map<int, long> red_black;   // node -> black(i) x red(i) count
  long unrelated = 0;

  long total_black_same() const;
  std::vector<long> per_label(int nodes) const;
};

TautDiagram make_taut(const Configuration& source, const Configuration& target,
                      const DiagramKey& matching);
TautDiagram identity_diagram(const Configuration& c);

CrossingReport crossings(const TautDiagram& d);

enum class BigonKind { SameLabel, Adjacent, RedBlack, Unrelated, UnrelatedRed };

struct Bigon {
  BigonKind kind;
  int strand_a = -1;  // index into d12's strand list (composite path order)
  int strand_b = -1;  // second strand, or -1 for red bigons
  int red_node = -1, red_idx = -1;
  int arrow = -1;  // for Adjacent
};

struct Concatenation {
  DiagramKey stacked;  // composite matching, windings and weights added
  std::vector<Bigon> bigons;
  bool taut() const { return bigons.empty(); }
};

Concatenation concatenate(const TautDiagram& d12, const TautDiagram& d23);

std::vector<TautDiagram> enumerate_taut(const Configuration& source,
                                        const Configuration& target, int max_wind,
                                        int max_weight, long max_cross = -1);

// q-grading, doubled so half-integers stay exact
long q_grading_x2(const TautDiagram& d);

// relative q_i winding numbers against a reference line strictly between the
// largest configuration angle and 1
std::map<int, long> qi_winding(const TautDiagram& d);
Rat reference_angle(const TautDiagram& d);

std::string diagram_str(const TautDiagram& d);

}  // namespace klrw
