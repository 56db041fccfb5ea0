#pragma once

#include "klrw/rat.hpp"

#include <map>
#include <string>
#include <vector>

namespace klrw {

// Branched-cover data for a map into a product of symmetric products: only
// the marked-point combinatorics enters the lifting conditions, so no curve
// geometry is stored.
struct CoverData {
  std::map<std::string, std::vector<std::string>> sheets;  // node -> sheet ids
  std::vector<std::string> root_witnesses;                 // points over root hyperplanes
  std::vector<std::string> framing_witnesses;              // points over framing hyperplanes
  std::vector<std::pair<std::string, std::string>> pairs;  // points over internal-matter loci

  void validate() const;  // all marked points distinct
  std::vector<std::string> marked_points() const;
};

// Candidate divisor for the fiber function: order n > 0 marks a zero of that
// order, n < 0 a pole; points without entries carry order 0.
struct DivisorData {
  std::map<std::string, int> orders;
};

struct LiftReport {
  bool accepted = false;
  int violated_condition = -1;  // 0..3 when rejected
  std::string detail;
};

// Conditions: (0) no support outside the marked points; (1) order exactly -1
// at every root witness; (2) order exactly +1 at every framing witness;
// (3) in each pair exactly one point has order +1 and the other order 0.
LiftReport check_lift(const CoverData& c, const DivisorData& d);

// All admissible divisors; conditions 1-2 are forced, condition 3 contributes
// an independent binary choice per pair, so the count is 2^#pairs.
std::vector<DivisorData> enumerate_lift_divisors(const CoverData& c);

}  // namespace klrw
