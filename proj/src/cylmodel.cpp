#include "klrw/cylmodel.hpp"

#include <set>

namespace klrw {

std::vector<std::string> CoverData::marked_points() const {
  std::vector<std::string> v = root_witnesses;
  v.insert(v.end(), framing_witnesses.begin(), framing_witnesses.end());
  for (auto& [p, q] : pairs) {
    v.push_back(p);
    v.push_back(q);
  }
  return v;
}

void CoverData::validate() const {
  std::set<std::string> seen;
  for (auto& p : marked_points())
    if (!seen.insert(p).second)
      throw Error(Err::BadInput, "marked point '" + p + "' appears twice (transversality)");
}

LiftReport check_lift(const CoverData& c, const DivisorData& d) {
  c.validate();
  LiftReport r;
  std::set<std::string> marked;
  for (auto& p : c.marked_points()) marked.insert(p);
  for (auto& [p, n] : d.orders) {
    if (n != 0 && !marked.count(p)) {
      r.violated_condition = 0;
      r.detail = "nonzero order at unmarked point '" + p + "'";
      return r;
    }
  }
  auto order_at = [&](const std::string& p) {
    auto it = d.orders.find(p);
    return it == d.orders.end() ? 0 : it->second;
  };
  for (auto& p : c.root_witnesses)
    if (order_at(p) != -1) {
      r.violated_condition = 1;
      r.detail = "root witness '" + p + "' needs a simple pole";
      return r;
    }
  for (auto& p : c.framing_witnesses)
    if (order_at(p) != 1) {
      r.violated_condition = 2;
      r.detail = "framing witness '" + p + "' needs a simple zero";
      return r;
    }
  for (auto& [p, q] : c.pairs) {
    int np = order_at(p), nq = order_at(q);
    bool ok = (np == 1 && nq == 0) || (np == 0 && nq == 1);
    if (!ok) {
      r.violated_condition = 3;
      r.detail = "pair (" + p + ", " + q + ") needs a simple zero on exactly one side";
      return r;
    }
  }
  r.accepted = true;
  return r;
}

std::vector<DivisorData> enumerate_lift_divisors(const CoverData& c) {
  c.validate();
  DivisorData base;
  for (auto& p : c.root_witnesses) base.orders[p] = -1;
  for (auto& p : c.framing_witnesses) base.orders[p] = 1;
  std::vector<DivisorData> out;
  size_t npairs = c.pairs.size();
  for (size_t mask = 0; mask < (size_t{1} << npairs); ++mask) {
    DivisorData d = base;
    for (size_t i = 0; i < npairs; ++i) {
      if (mask & (size_t{1} << i))
        d.orders[c.pairs[i].first] = 1;
      else
        d.orders[c.pairs[i].second] = 1;
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace klrw
