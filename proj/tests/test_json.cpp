#include <doctest.h>

#include <random>

#include "smashkit/json_io.hpp"

using namespace smashkit;
using nlohmann::json;

namespace {

Shape random_shape(std::mt19937& rng, int& next, int depth) {
  if (depth == 0 || rng() % 3 == 0) return Shape::leaf("X" + std::to_string(next++));
  if (rng() % 4 == 0) {
    Shape a = random_shape(rng, next, depth - 1);
    Shape b = random_shape(rng, next, depth - 1);
    Shape c = random_shape(rng, next, depth - 1);
    return Shape::triple(a, b, c);
  }
  Shape l = random_shape(rng, next, depth - 1);
  Shape r = random_shape(rng, next, depth - 1);
  return Shape::smash(l, r);
}

}  // namespace

TEST_CASE("shape grammar") {
  Shape A = Shape::leaf("A"), B = Shape::leaf("B"), C = Shape::leaf("C");
  CHECK(parse_shape("A") == A);
  CHECK(parse_shape("I") == Shape::unit());
  CHECK(parse_shape("(A ^ B)") == Shape::smash(A, B));
  CHECK(parse_shape("  ((A^B) ^C) ") == Shape::smash(Shape::smash(A, B), C));
  CHECK(parse_shape("[A, B, C]") == Shape::triple(A, B, C));
  CHECK(parse_shape("(A' ^ B_2)") == Shape::smash(Shape::leaf("A'"), Shape::leaf("B_2")));
  CHECK(parse_shape("(I ^ A)") == Shape::smash(Shape::unit(), A));
}

TEST_CASE("malformed shapes name the position") {
  for (const char* bad : {"", "(A ^ B", "(A B)", "(A ^ B))", "[A, B]", "^", "(A ^ )"}) {
    CAPTURE(bad);
    try {
      parse_shape(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::IllFormed);
      CHECK(std::string(e.what()).find(" at ") != std::string::npos);
    }
  }
}

TEST_CASE("printed shapes parse back") {
  std::mt19937 rng(3);
  for (int run = 0; run < 200; ++run) {
    int next = 0;
    Shape s = random_shape(rng, next, 4);
    CHECK(parse_shape(s.str()) == s);
  }
}

TEST_CASE("obligation report fields") {
  Shape A = Shape::leaf("A"), B = Shape::leaf("B");
  auto report = discharge(obligations_for(Homotopy::of(diagram("involution"))));
  json j = to_json(report);
  CHECK(j["ok"] == true);
  REQUIRE(j["obligations"].size() == 3);
  for (const auto& e : j["obligations"]) {
    CHECK(e.contains("tag"));
    CHECK(e["vars"].is_array());
    CHECK(e["fillable"].is_boolean());
    CHECK(e["lhs_word"].contains("letters"));
    CHECK(e["rhs_word"].contains("source"));
  }

  Term a = Term::var("a", A);
  Shape AB = Shape::smash(A, B);
  auto w = normalize(PathExpr::inv(PathExpr::push_l(AB, a)));
  json wj = to_json(w);
  REQUIRE(wj["letters"].size() == 1);
  CHECK(wj["letters"][0]["sign"] == -1);
  CHECK(wj["source"] == "*^");
}

TEST_CASE("failed reports carry both words") {
  auto report = discharge(obligations_for(Homotopy::of(diagram("triangle"))));
  json j = to_json(report);
  CHECK(j["ok"] == false);
  int failing = 0;
  for (const auto& e : j["obligations"]) {
    if (e["fillable"] == true) continue;
    ++failing;
    CHECK(e["lhs_word"]["letters"].size() == 2);
    CHECK(e["rhs_word"]["letters"].empty());
  }
  CHECK(failing == 3);
}

TEST_CASE("syntax serializes") {
  Shape A = Shape::leaf("A"), B = Shape::leaf("B");
  Shape AB = Shape::smash(A, B);
  CHECK(to_json(AB)["kind"] == "smash");
  CHECK(to_json(Shape::unit())["kind"] == "unit");
  CHECK(to_json(Term::pair(Term::var("a", A), Term::basepoint(B)))["right"]["kind"] == "basepoint");
  CHECK(to_json(PathExpr::push_r(AB, Term::var("b", B)))["push"] == "push_r");

  json m = to_json(*swap(A, B));
  CHECK(m["kind"] == "table");
  CHECK(m["paths"].size() == 2);
  CHECK(to_json(*associator(A, B, Shape::leaf("C")))["stages"].size() == 4);
  CHECK(to_json(*MapDef::abstract("f", A, B))["strict"] == true);
}
