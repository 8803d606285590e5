#include "qlab/netlist.hpp"

#include "qlab/error.hpp"

#include "doctest.h"

#include <numbers>

using namespace qlab;

TEST_CASE("minimal well-formed netlist") {
  Circuit c = parse_netlist("mode a b\nphase a phi=0\ndetector b D1\n");
  CHECK(c.modes.size() == 2);
  CHECK(c.elements.size() == 1);
  CHECK(c.elements[0].kind == ElementKind::phase);
  CHECK(c.detectors.size() == 1);
  CHECK(c.detectors[0].label == "D1");
}

TEST_CASE("the built-in Mach-Zehnder has five elements") {
  Circuit c = parse_netlist(mz_netlist(0.25));
  CHECK(c.modes.size() == 7);
  REQUIRE(c.elements.size() == 5);
  int halfsilver = 0, mirror = 0, phase = 0;
  for (const Element& e : c.elements) {
    if (e.kind == ElementKind::halfsilver) ++halfsilver;
    if (e.kind == ElementKind::mirror) ++mirror;
    if (e.kind == ElementKind::phase) ++phase;
  }
  CHECK(halfsilver == 2);
  CHECK(mirror == 2);
  CHECK(phase == 1);
  CHECK(c.sources.size() == 1);
  CHECK(c.detectors.size() == 2);
}

TEST_CASE("transmission out of range is rejected") {
  CHECK_THROWS_WITH_AS(parse_netlist("mode a b c\nhalfsilver a -> b c T=1.5\n"),
                       doctest::Contains("ParamOutOfRange"), Error);
}

TEST_CASE("undeclared modes are rejected with position info") {
  try {
    parse_netlist("mode a\nmirror a -> b\n");
    FAIL("expected UndeclaredMode");
  } catch (const Error& e) {
    CHECK(e.kind() == "UndeclaredMode");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("duplicate detector labels are rejected") {
  try {
    parse_netlist("mode a b\ndetector a D1\ndetector b D1\n");
    FAIL("expected DuplicateLabel");
  } catch (const Error& e) {
    CHECK(e.kind() == "DuplicateLabel");
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_netlist("mode a b\nmirror a b\n");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.kind() == "SyntaxError");
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_netlist("bogus x\n"), Error);
  CHECK_THROWS_AS(parse_netlist("mode a\nphase a\n"), Error);
}

TEST_CASE("pi expressions in angle literals") {
  const double pi = std::numbers::pi;
  Circuit c = parse_netlist(
      "mode a b c d e f\n"
      "phase a phi=pi\n"
      "phase b phi=-pi/2\n"
      "phase c phi=3pi/4\n"
      "phase d phi=0.5pi\n"
      "phase e phi=0.25\n"
      "phase f phi=pi/4\n");
  CHECK(c.elements[0].phi == doctest::Approx(pi));
  CHECK(c.elements[1].phi == doctest::Approx(-pi / 2));
  CHECK(c.elements[2].phi == doctest::Approx(3 * pi / 4));
  CHECK(c.elements[3].phi == doctest::Approx(pi / 2));
  CHECK(c.elements[4].phi == doctest::Approx(0.25));
  CHECK(c.elements[5].phi == doctest::Approx(pi / 4));

  CHECK_THROWS_AS(parse_netlist("mode a\nphase a phi=pie\n"), Error);
}

TEST_CASE("comments and blank lines are ignored") {
  Circuit c = parse_netlist(
      "# a comment\n"
      "\n"
      "mode a b   # trailing comment\n"
      "mirror a -> b\n");
  CHECK(c.modes.size() == 2);
  CHECK(c.elements.size() == 1);
}

TEST_CASE("nonlinear elements parse but stay representable") {
  Circuit c = parse_netlist(
      "mode a b c d e\n"
      "downconvert a -> b c eta=1e-6\n"
      "upconvert b c -> d eta=1e-6\n"
      "amplify d -> e G=2 N=0.5\n");
  REQUIRE(c.elements.size() == 3);
  CHECK(c.elements[0].kind == ElementKind::downconvert);
  CHECK(c.elements[0].eta == doctest::Approx(1e-6));
  CHECK(c.elements[1].input_modes.size() == 2);
  CHECK(c.elements[2].G == doctest::Approx(2.0));
  CHECK(c.elements[2].N == doctest::Approx(0.5));
}

TEST_CASE("duplicate mode declarations are rejected") {
  CHECK_THROWS_AS(parse_netlist("mode a a\n"), Error);
}

TEST_CASE("mangled input always yields a typed error, never a crash") {
  std::string base = mz_netlist(0.7);
  // truncations at every offset
  for (std::size_t cut = 0; cut < base.size(); cut += 7) {
    try {
      parse_netlist(base.substr(0, cut));
    } catch (const Error&) {
    }
  }
  // byte substitutions
  for (std::size_t pos = 0; pos < base.size(); pos += 11) {
    for (char c : {'=', '>', '#', '\t', 'Q', '-', '9'}) {
      std::string mutated = base;
      mutated[pos] = c;
      try {
        parse_netlist(mutated);
      } catch (const Error&) {
      }
    }
  }
}
