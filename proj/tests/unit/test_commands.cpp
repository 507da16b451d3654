#include "doctest.h"
#include "unifree/commands.hpp"
#include "unifree/error.hpp"

using namespace unifree;

namespace {

const Json kNu = parse_json(R"({"families": [{"template": "chain", "multiplicity": "omega"}]})");
const Json kNuLoop =
    parse_json(R"({"components": [{"kind": "loop"}], "families": [{"template": "chain", "multiplicity": "omega"}]})");
const Json kSwap = parse_json(R"({"next": [1, 0]})");

void round_trips(const Report& r) {
  REQUIRE(r.json.contains("certificate"));
  const Json again = parse_json(r.json.dump(2));
  CHECK(again == r.json);
  const Report c = run_certify(again, {});
  CHECK(c.json["consistent"] == true);
  CHECK(c.json["rechecked_passed"] == r.passed);
}

}  // namespace

TEST_CASE("analyze on nu") {
  const Report r = run_analyze(kNu, {});
  CHECK(r.json["universal"] == true);
  CHECK(r.json["condition_I"] == "omega components");
  CHECK(r.json["condition_W"] == "all natural");
  CHECK_FALSE(r.json.contains("counterexample"));
  CHECK(r.passed);
  CHECK(r.text.find("universal: true") != std::string::npos);
}

TEST_CASE("analyze on a description with a loop") {
  const Report r = run_analyze(kNuLoop, {});
  CHECK(r.json["universal"] == false);
  CHECK(r.json["counterexample"] == "has_cycle");
}

TEST_CASE("lift certificates re-verify") {
  SUBCASE("universal source") {
    const Report r = run_lift(kNu, kSwap, 5, {});
    CHECK(r.passed);
    CHECK(r.json["method"] == "universal");
    round_trips(r);
  }
  SUBCASE("fixed point") {
    const Report r = run_lift(kNuLoop, parse_json("[0, 0, 1]"), 4, {});
    CHECK(r.passed);
    CHECK(r.json["method"] == "fixed_point");
    round_trips(r);
  }
  SUBCASE("no lifting") {
    const Report r = run_lift(kNuLoop, kSwap, 4, {});
    CHECK_FALSE(r.passed);
    CHECK(r.json["search"]["outcome"] == "no");
  }
}

TEST_CASE("laws on ens with bound 3 pass") {
  RunOptions o;
  o.bound = 3;
  const Report r = run_laws("ens", "surjective", std::nullopt, o);
  CHECK(r.passed);
  CHECK(r.json["laws"].size() == 10);
}

TEST_CASE("laws reject unknown names") {
  try {
    run_laws("groups", "surjective", std::nullopt, {});
    FAIL("expected UsageError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UsageError);
  }
}

TEST_CASE("ellone lift report and certificate") {
  const Report r = run_ellone_lift(parse_json(R"([["0", "1"], ["1", "0"]])"), parse_json(R"([["1", "0"]])"), 4, {});
  CHECK(r.passed);
  CHECK(r.json["rank"] == 2);
  CHECK(r.json["projection_norm"] == "1/1");
  round_trips(r);
}

TEST_CASE("universal with an action") {
  const Json action = parse_json(R"({"monoid": "z3", "carrier": 3, "generators": [[1, 2, 0]]})");
  const Report r = run_universal("ens", Json("z3"), action, {});
  CHECK(r.passed);
  round_trips(r);
  const Report all = run_universal("ens", Json("z2"), std::nullopt, RunOptions{0, 2});
  CHECK(all.passed);
  CHECK(all.json["liftings"]["actions"] == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = run_lift(kNu, kSwap, 5, {}).json.dump();
  const auto b = run_lift(kNu, kSwap, 5, {}).json.dump();
  CHECK(a == b);
  const Json m = parse_json(R"([["1/2", "0"], ["1/2", "1"]])");
  const Json s = parse_json(R"([["1", "0"], ["0", "1"]])");
  CHECK(run_ellone_lift(m, s, 3, RunOptions{7, {}}).json.dump() == run_ellone_lift(m, s, 3, RunOptions{7, {}}).json.dump());
}

TEST_CASE("malformed JSON structure is an input error") {
  try {
    run_analyze(parse_json(R"({"families": [{"template": "chain", "multiplicity": -1}]})"), {});
    FAIL("expected MalformedInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedInput);
  }
}
