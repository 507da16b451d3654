#include "doctest.h"
#include "unifree/error.hpp"
#include "unifree/serialize.hpp"

using namespace unifree;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

std::vector<SelfMapDescription> descriptions() {
  const auto chain = ComponentTemplate::chain();
  const auto wide = ComponentTemplate::natural({{2, 3}, {1}}, Periodic<std::vector<std::size_t>>{{{0, 1}, {0, 0, 0}}, {{0}}});
  const auto zc = ComponentTemplate::z_chain({{{HangingTree{{-1, 0}}}}, {{}}});
  return {
      nu_description(),
      SelfMapDescription{{ComponentTemplate::loop()}, {Family{chain, std::nullopt}}},
      SelfMapDescription{{zc, wide}, {Family{wide, 3}, Family{chain, std::nullopt}}},
      SelfMapDescription{{ComponentTemplate::finite_core({1, 2, 0, 0})}, {}},
  };
}

}  // namespace

TEST_CASE("rationals and vectors") {
  CHECK(rational_to_json(Rational(-2, 4)) == "-1/2");
  CHECK(rational_from_json(Json("3/6")) == Rational(1, 2));
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK(code_of([] { rational_from_json(Json(0.5)); }) == ErrorCode::MalformedInput);
  CHECK(vector_from_json(parse_json(R"({"2": "1/3"})"), 3) == Vector{0, 0, Rational(1, 3)});
  CHECK(code_of([] { vector_from_json(parse_json(R"({"3": "1"})"), 3); }) == ErrorCode::MalformedInput);
  SparseVec v;
  v.add(7, Rational(-1, 2)).add(1000000, 3);
  CHECK(sparse_from_json(sparse_to_json(v)) == v);
}

TEST_CASE("matrices round-trip row-major") {
  Matrix m(2, 3);
  m.at(0, 2) = Rational(1, 2);
  m.at(1, 0) = -1;
  const Json j = matrix_to_json(m);
  CHECK(j[0][2] == "1/2");
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json{{"matrix", j}}) == m);
  CHECK(code_of([] { matrix_from_json(parse_json(R"([["1"], ["1", "2"]])")); }) == ErrorCode::MalformedInput);
}

TEST_CASE("monoids round-trip") {
  std::vector<Monoid> ms = {Monoid::nat(), Monoid::integers(), Monoid::cyclic(3), Monoid::free_monoid(2),
                            Monoid::free_group(1), Monoid::trivial()};
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& m : small_monoids(n)) ms.push_back(m);
  for (const auto& m : ms) CHECK(monoid_from_json(monoid_to_json(m)) == m);
  CHECK(monoid_from_json(Json("z4")) == Monoid::cyclic(4));
  CHECK(monoid_from_json(parse_json(R"({"kind": "small", "order": 4, "index": 0})")) == small_monoids(4)[0]);
  CHECK(code_of([] { monoid_from_json(Json("q8")); }) == ErrorCode::MalformedInput);
}

TEST_CASE("descriptions round-trip with the same verdict and truncation") {
  for (const auto& d : descriptions()) {
    const Json j = description_to_json(d);
    const SelfMapDescription back = description_from_json(parse_json(j.dump()));
    CHECK(description_to_json(back) == j);
    CHECK(decide_universality(back).is_universal == decide_universality(d).is_universal);
    CHECK(truncate(back, 4).map.next == truncate(d, 4).map.next);
  }
  CHECK(decide_universality(description_from_json(parse_json(R"({"preset": "nu"})"))).is_universal);
  CHECK(code_of([] {
          description_from_json(parse_json(R"({"components": [{"kind": "finite_core", "next": [1, 0, 3, 2]}]})"));
        }) == ErrorCode::MalformedTemplate);
}

TEST_CASE("self-maps and actions round-trip") {
  const PartialSelfMap f = selfmap_from_json(parse_json(R"({"next": [1, null, 0], "labels": ["x", "y", "z"]})"));
  CHECK(f.next == std::vector<std::size_t>{1, kNone, 0});
  CHECK(selfmap_to_json(f)["next"][1].is_null());

  const SetMAction a = action_from_json(parse_json(R"({"monoid": "z3", "carrier": 3, "generators": [[1, 2, 0]]})"));
  const SetMAction b = action_from_json(action_to_json(a));
  CHECK(b.table() == a.table());
  CHECK(b.window()->elements() == a.window()->elements());
  CHECK(code_of([] {
          action_from_json(parse_json(R"({"monoid": "z2", "carrier": 2, "window": ["0", "1"], "table": [[1, 0], [1, 0]]})"));
        }) == ErrorCode::MalformedInput);
}

TEST_CASE("lifting certificates recheck and detect tampering") {
  const auto f = make_self_map({1, 0});
  const auto lift = lift_finite_map_to_nu(f, 4);
  Json c = certificate_to_json(lift.lifting);
  auto r = recheck_certificate(parse_json(c.dump()));
  CHECK(r.passed);
  CHECK(r.consistent());
  CHECK(r.checks == lift.lifting.certificate.squares.size());

  Json tampered = c;
  tampered["map"][0] = 1;
  r = recheck_certificate(tampered);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.consistent());
  CHECK(r.failures > 0);

  Json truncated = c;
  truncated["squares"].erase(0);
  CHECK_FALSE(recheck_certificate(truncated).passed);
  CHECK(code_of([] { recheck_certificate(parse_json(R"({"kind": "other"})")); }) == ErrorCode::MalformedInput);
}

TEST_CASE("ellone certificates recheck") {
  Matrix m(2, 2);
  m.at(0, 1) = m.at(1, 0) = 1;
  const RationalTarget t = make_target(m);
  const NuPipeline p = lift_through_nu(t, {{1, 0}}, 4, 4);
  const Json c = ellone_certificate_to_json(t, p, 4);
  CHECK(recheck_certificate(c).passed);
  Json bad = c;
  bad["phi"][0] = 0;
  CHECK_FALSE(recheck_certificate(bad).passed);
}

TEST_CASE("dumps are deterministic with sorted keys") {
  const Json a = description_to_json(descriptions()[2]);
  const Json b = description_to_json(descriptions()[2]);
  CHECK(a.dump() == b.dump());
  const std::string s = Json{{"zeta", 1}, {"alpha", 2}}.dump();
  CHECK(s.find("alpha") < s.find("zeta"));
}
