#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klrw/json_io.hpp"
#include "klrw/quiver.hpp"

using namespace klrw;

namespace {

RawQuiver raw_a2() {
  RawQuiver r;
  r.nodes = {"1", "2"};
  r.arrows = {{"2", "1"}};
  r.dims = {{"1", 1}, {"2", 1}};
  r.framings = {{"1", 0}, {"2", 0}};
  return r;
}

}  // namespace

TEST_CASE("valid quivers") {
  Quiver q = validate_quiver(raw_a2());
  CHECK(q.num_nodes() == 2);
  CHECK(q.has_arrow(1, 0));
  CHECK(!q.has_arrow(0, 1));

  RawQuiver gl2;
  gl2.nodes = {"1"};
  gl2.dims = {{"1", 2}};
  gl2.framings = {{"1", 0}};
  Quiver q2 = validate_quiver(gl2);
  CHECK(q2.dims[0] == 2);
}

TEST_CASE("rejections name the offense") {
  RawQuiver r = raw_a2();
  r.arrows = {{"1", "1"}};
  try {
    validate_quiver(r);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::LoopEdge);
  }
  r = raw_a2();
  r.arrows = {{"2", "1"}, {"2", "1"}};
  try {
    validate_quiver(r);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::DuplicateEdge);
  }
  r = raw_a2();
  r.arrows = {{"2", "3"}};
  try {
    validate_quiver(r);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::UnknownNode);
  }
  r = raw_a2();
  r.dims["1"] = -1;
  try {
    validate_quiver(r);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::NegativeDimension);
  }
}

TEST_CASE("configuration validation") {
  RawQuiver r;
  r.nodes = {"1"};
  r.dims = {{"1", 1}};
  r.framings = {{"1", 1}};
  Quiver q = validate_quiver(r);
  auto c = validate_configuration(q, {{Angle::of(0, 4)}}, {{Angle::of(1, 4)}});
  CHECK(c.total_black() == 1);

  RawQuiver r2;
  r2.nodes = {"1"};
  r2.dims = {{"1", 2}};
  r2.framings = {{"1", 0}};
  Quiver q2 = validate_quiver(r2);
  try {
    validate_configuration(q2, {{}}, {{Angle::of(1, 4), Angle::of(1, 4)}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::BlackCollision);
  }
  try {
    validate_configuration(q, {{Angle::of(0, 4)}}, {{Angle::of(0, 4)}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::BlackOnRed);
  }
}

TEST_CASE("matter weight counting") {
  // sum over arrows d_i d_j internal entries, sum d_i m_i framing entries
  RawQuiver r;
  r.nodes = {"1", "2"};
  r.arrows = {{"2", "1"}};
  r.dims = {{"1", 2}, {"2", 1}};
  r.framings = {{"1", 1}, {"2", 0}};
  Quiver q = validate_quiver(r);
  auto mw = matter_weights(q);
  CHECK(mw.internal_weights.size() == 2);  // d_2 * d_1
  CHECK(mw.framing_weights.size() == 2);   // d_1 * m_1

  RawQuiver bare;
  bare.nodes = {"1"};
  bare.dims = {{"1", 3}};
  Quiver qb = validate_quiver(bare);
  auto mb = matter_weights(qb);
  CHECK(mb.internal_weights.empty());
  CHECK(mb.framing_weights.empty());

  RawQuiver fr;  // single framed node [1] -> (1)
  fr.nodes = {"1"};
  fr.dims = {{"1", 1}};
  fr.framings = {{"1", 1}};
  auto mf = matter_weights(validate_quiver(fr));
  CHECK(mf.framing_weights.size() == 1);
}

TEST_CASE("weight direction convention") {
  // arrow 2 -> 1 carries weight y_{1,a}/y_{2,b}: +1 on the target coordinate
  Quiver q = validate_quiver(raw_a2());
  auto mw = matter_weights(q);
  REQUIRE(mw.internal_weights.size() == 1);
  auto& xi = mw.internal_weights[0].xi.entries;
  CHECK(xi.at({0, 0}) == 1);
  CHECK(xi.at({1, 0}) == -1);
}

TEST_CASE("json round trip") {
  Quiver q = validate_quiver(raw_a2());
  Quiver q2 = quiver_from_json(quiver_to_json(q));
  CHECK(q == q2);
  auto c = validate_configuration(q, {{}, {}}, {{Angle::of(1, 8)}, {Angle::of(5, 8)}});
  Configuration c2 = configuration_from_json(q, configuration_to_json(c));
  CHECK(c == c2);
}

TEST_CASE("configuration order independence") {
  RawQuiver r;
  r.nodes = {"1"};
  r.dims = {{"1", 2}};
  r.framings = {{"1", 0}};
  Quiver q = validate_quiver(r);
  auto c1 = validate_configuration(q, {{}}, {{Angle::of(1, 4), Angle::of(3, 4)}});
  auto c2 = validate_configuration(q, {{}}, {{Angle::of(3, 4), Angle::of(1, 4)}});
  CHECK(c1.total_black() == c2.total_black());
}
