#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klrw/cylmodel.hpp"

using namespace klrw;

namespace {

CoverData sample_cover(int roots, int framings, int pairs) {
  CoverData c;
  c.sheets["1"] = {"s1"};
  for (int i = 0; i < roots; ++i) c.root_witnesses.push_back("r" + std::to_string(i));
  for (int i = 0; i < framings; ++i) c.framing_witnesses.push_back("f" + std::to_string(i));
  for (int i = 0; i < pairs; ++i)
    c.pairs.push_back({"p" + std::to_string(i), "q" + std::to_string(i)});
  return c;
}

}  // namespace

TEST_CASE("empty data accepts the empty divisor") {
  CoverData c = sample_cover(0, 0, 0);
  DivisorData d;
  CHECK(check_lift(c, d).accepted);
  CHECK(enumerate_lift_divisors(c).size() == 1);
}

TEST_CASE("condition checks") {
  CoverData c = sample_cover(1, 1, 1);
  DivisorData good;
  good.orders = {{"r0", -1}, {"f0", 1}, {"p0", 1}};
  CHECK(check_lift(c, good).accepted);

  DivisorData bad0 = good;
  bad0.orders["elsewhere"] = 2;
  CHECK(check_lift(c, bad0).violated_condition == 0);

  DivisorData bad1 = good;
  bad1.orders["r0"] = -2;
  CHECK(check_lift(c, bad1).violated_condition == 1);

  DivisorData bad2 = good;
  bad2.orders["f0"] = 2;
  CHECK(check_lift(c, bad2).violated_condition == 2);

  DivisorData bad3 = good;
  bad3.orders["q0"] = 1;  // both sides of the pair
  CHECK(check_lift(c, bad3).violated_condition == 3);
}

TEST_CASE("enumeration counts two to the pairs") {
  for (int k = 0; k <= 6; ++k) {
    CoverData c = sample_cover(1, 1, k);
    auto all = enumerate_lift_divisors(c);
    CHECK(all.size() == (size_t{1} << k));
    for (auto& d : all) CHECK(check_lift(c, d).accepted);
  }
}

TEST_CASE("exhaustive check on small marked sets") {
  // all order assignments in [-2,2] on <= 5 marked points; exactly the
  // enumerated divisors pass
  CoverData c = sample_cover(1, 1, 1);  // 4 points: r0, f0, p0, q0
  auto marked = c.marked_points();
  auto admissible = enumerate_lift_divisors(c);
  long accepted = 0;
  std::vector<int> ord(marked.size(), -2);
  while (true) {
    DivisorData d;
    for (size_t i = 0; i < marked.size(); ++i)
      if (ord[i] != 0) d.orders[marked[i]] = ord[i];
    if (check_lift(c, d).accepted) {
      ++accepted;
      bool found = false;
      for (auto& a : admissible) {
        bool same = true;
        for (auto& p : marked) {
          int x = a.orders.count(p) ? a.orders.at(p) : 0;
          int y = d.orders.count(p) ? d.orders.at(p) : 0;
          if (x != y) same = false;
        }
        if (same) found = true;
      }
      CHECK(found);
    }
    size_t i = 0;
    for (; i < ord.size(); ++i) {
      if (ord[i] < 2) {
        ++ord[i];
        break;
      }
      ord[i] = -2;
    }
    if (i == ord.size()) break;
  }
  CHECK(accepted == static_cast<long>(admissible.size()));
}

TEST_CASE("monotonicity: a deleted root witness rejects the old pole") {
  CoverData c = sample_cover(1, 0, 0);
  DivisorData d;
  d.orders = {{"r0", -1}};
  CHECK(check_lift(c, d).accepted);
  CoverData c2 = c;
  c2.root_witnesses.clear();
  auto rep = check_lift(c2, d);
  CHECK(!rep.accepted);
  CHECK(rep.violated_condition == 0);
}

TEST_CASE("duplicate marked points rejected") {
  CoverData c = sample_cover(1, 0, 1);
  c.pairs[0].first = "r0";
  CHECK_THROWS_AS(c.validate(), Error);
}
