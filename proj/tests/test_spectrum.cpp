#include "fqed/errors.hpp"
#include "fqed/spectrum.hpp"

#include <doctest.h>

#include <sstream>

using namespace fqed;

namespace {

SpectrumInput parse(const std::string& text) {
  std::istringstream in(text);
  return parse_spectrum(in);
}

const char* kDoc = R"(# two-level toy
[levels]
2p  -0.125
1s  -0.5   # ground

[current 2p 1s]
# k  J0  Jx  Jy  Jz
0.0  0  0.01  0  0
1.0  0  0.03  0  0
[current 1s 1s]
0.0  0.1 0 0 0
2.0  0.1 0 0 0
)";

void expect_line(const std::string& text, const std::string& needle) {
  try {
    parse(text);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

} // namespace

TEST_SUITE("spectrum") {

TEST_CASE("parse levels and currents") {
  const auto s = parse(kDoc);
  REQUIRE(s.levels.size() == 2);
  CHECK(s.levels[0].label == "2p");
  CHECK(s.level("1s").energy == -0.5);
  const auto* j = s.current("1s", "2p");
  REQUIRE(j != nullptr);
  CHECK((*j)(0.5).x == doctest::Approx(0.02));
  CHECK(s.cutoff() == 1.0);
  CHECK_FALSE(s.k_max.has_value());
  CHECK(s.current("2p", "2p") == nullptr);
}

TEST_CASE("explicit cutoff") {
  const auto s = parse(std::string(kDoc) + "[cutoff]\n0.8\n");
  CHECK(s.cutoff() == 0.8);
}

TEST_CASE("malformed documents name the line") {
  expect_line("[levels]\n1s\n", "line 2");
  expect_line("1s -0.5\n", "line 1");
  expect_line("[levels]\n1s -0.5\n[bogus]\n", "line 3");
  expect_line("[levels]\n1s -0.5\n[current 1s]\n", "line 3");
  expect_line("[levels]\n1s -0.5 extra\n", "line 2");
  expect_line("[levels\n", "line 1");
  expect_line("[levels]\n1s -0.5\n[current 1s 1s]\n0 1 2 3\n", "line 4");
  CHECK_THROWS_AS(parse("[levels]\na 0\n[current a b]\n0 0 0 0 0\n"), DomainError);
  CHECK_THROWS_AS(parse("[levels]\na 0\n[current a a]\n1 0 0 0 0\n0 0 0 0 0\n"), DomainError);
  CHECK_THROWS_AS(parse("[levels]\na 0\nb 1\n[current a b]\n0 0 0 0 0\n[current b a]\n0 0 0 0 0\n"), DomainError);
  CHECK_THROWS_AS(parse(""), DomainError);
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_spectrum("/nonexistent/spectrum.txt"), IoError); }

}
