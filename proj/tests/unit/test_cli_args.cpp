#include <vector>

#include "args.hpp"
#include "doctest.h"

using namespace unifree::cli;

namespace {

Command parse(std::vector<const char*> args) {
  args.insert(args.begin(), "unifree");
  return parse_args(static_cast<int>(args.size()), args.data());
}

int exit_code_of(std::vector<const char*> args) {
  try {
    parse(std::move(args));
  } catch (const ArgsError& e) {
    return e.exit_code();
  }
  return -1;
}

}  // namespace

TEST_CASE("analyze takes a file") {
  const Command c = parse({"analyze", "nu.json"});
  CHECK(c.kind == CommandKind::Analyze);
  CHECK(c.input == "nu.json");
  CHECK_FALSE(c.json);
  CHECK(c.seed == 0);
  CHECK_FALSE(c.bound);
}

TEST_CASE("lift with source, target and depth") {
  const Command c = parse({"lift", "--source", "nu.json", "--target", "swap.json", "--depth", "5"});
  CHECK(c.kind == CommandKind::Lift);
  CHECK(c.source == "nu.json");
  CHECK(c.target == "swap.json");
  CHECK(c.depth == 5);
}

TEST_CASE("laws with category and bound") {
  const Command c = parse({"laws", "--category", "finvecq", "--bound", "3"});
  CHECK(c.kind == CommandKind::Laws);
  CHECK(c.category == "finvecq");
  REQUIRE(c.bound);
  CHECK(*c.bound == 3);
  CHECK(c.mode == "surjective");
}

TEST_CASE("global flags before or after the subcommand") {
  Command c = parse({"--json", "--seed", "9", "certify", "cert.json"});
  CHECK(c.kind == CommandKind::Certify);
  CHECK(c.json);
  CHECK(c.seed == 9);
  c = parse({"analyze", "nu.json", "--json", "--bound", "4"});
  CHECK(c.json);
  CHECK(*c.bound == 4);
}

TEST_CASE("ellone lift and universal") {
  Command c = parse({"ellone", "lift", "--target", "m.json", "--seed", "p.json", "--depth", "7"});
  CHECK(c.kind == CommandKind::ElloneLift);
  CHECK(c.points == "p.json");
  CHECK(c.depth == 7);
  c = parse({"universal", "--category", "ens", "--monoid", "z2.json", "--action", "a.json"});
  CHECK(c.kind == CommandKind::Universal);
  CHECK(c.monoid == "z2.json");
  CHECK(c.action == "a.json");
}

TEST_CASE("usage errors exit with 2, help with 0") {
  CHECK(exit_code_of({}) == 2);
  CHECK(exit_code_of({"analyze"}) == 2);
  CHECK(exit_code_of({"analyze", "nu.json", "--frobnicate"}) == 2);
  CHECK(exit_code_of({"laws", "--category", "groups"}) == 2);
  CHECK(exit_code_of({"lift", "--source", "a.json", "--target", "b.json", "--depth", "x"}) == 2);
  CHECK(exit_code_of({"ellone"}) == 2);
  CHECK(exit_code_of({"--help"}) == 0);
  CHECK(exit_code_of({"lift", "--help"}) == 0);
}
