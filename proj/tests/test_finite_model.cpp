#include <doctest.h>

#include <cstdlib>
#include <functional>

#include "smashkit/finite_model.hpp"
#include "smashkit/induction.hpp"

using namespace smashkit;

namespace {

const Shape A = Shape::leaf("A");
const Shape B = Shape::leaf("B");
const Shape C = Shape::leaf("C");
const Shape AB = Shape::smash(A, B);

// Calls fn on every tuple in {1..max}^n.
void each_tuple(std::size_t n, std::size_t max, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> t(n, 1);
  while (true) {
    fn(t);
    std::size_t i = 0;
    while (i < n && ++t[i] > max) t[i++] = 1;
    if (i == n) break;
  }
}

std::size_t free_leaves(const Shape& s) {
  std::size_t n = 0;
  for (const auto& l : s.leaf_names())
    if (l != "I") ++n;
  return n;
}

// Counts non-collapsed tuples directly: every coordinate off the basepoint.
std::size_t direct_count(const std::vector<std::size_t>& sizes) {
  std::size_t prod = 1;
  for (auto s : sizes) prod *= s - 1;
  return prod + 1;
}

}  // namespace

TEST_CASE("disjoint set") {
  DisjointSet ds(5);
  CHECK(ds.classes() == 5);
  CHECK(ds.unite(0, 1));
  CHECK_FALSE(ds.unite(1, 0));
  CHECK(ds.unite(3, 4));
  CHECK(ds.find(1) == ds.find(0));
  CHECK(ds.find(2) != ds.find(0));
  CHECK(ds.classes() == 3);
  auto k = ds.add();
  CHECK(k == 5);
  CHECK(ds.size() == 6);
}

TEST_CASE("smash cardinality") {
  CHECK(SmashModel(AB, {{"A", 2}, {"B", 2}}).size() == 2);
  CHECK(SmashModel(AB, {{"A", 1}, {"B", 4}}).size() == 1);
  CHECK(SmashModel(AB, {{"A", 3}, {"B", 4}}).size() == 7);
  for (std::size_t a = 1; a <= 5; ++a)
    for (std::size_t b = 1; b <= 5; ++b) {
      SmashModel m(AB, {{"A", a}, {"B", b}});
      CHECK(m.size() == (a - 1) * (b - 1) + 1);
      CHECK(m.raw().size() == a * b + 1);
      CHECK(m.elements().front() == Term::basepoint(AB));
    }
  Shape ABC = Shape::smash(AB, C);
  each_tuple(3, 4, [&](const std::vector<std::size_t>& s) {
    SmashModel m(ABC, sizes_for(ABC, s));
    CHECK(m.size() == direct_count(s));
  });
  Shape T = Shape::triple(A, B, C);
  CHECK(SmashModel(T, {{"A", 3}, {"B", 3}, {"C", 2}}).size() == 5);
}

TEST_CASE("canonical forms") {
  Term a1 = leaf_element(A, 1);
  CHECK(leaf_element(A, 0) == Term::basepoint(A));
  CHECK(leaf_element(Shape::unit(), 1) == Term::unit_point());
  CHECK(canon(Term::pair(a1, Term::basepoint(B))) == Term::basepoint(AB));
  CHECK(canon(Term::pair(Term::pair(a1, Term::basepoint(B)), leaf_element(C, 1))) ==
        Term::basepoint(Shape::smash(AB, C)));
  Term ab = Term::pair(a1, leaf_element(B, 2));
  CHECK(canon(ab) == ab);
  SmashModel m(AB, {{"A", 3}, {"B", 3}});
  CHECK(m.elements().at(m.index_of(ab)) == ab);
  CHECK_THROWS_AS(m.index_of(Term::pair(a1, leaf_element(B, 7))), Error);
}

TEST_CASE("evaluation") {
  Term a = leaf_element(A, 1), b = leaf_element(B, 2), c = leaf_element(C, 1);
  CHECK(eval_map(swap(A, B), Term::pair(a, b)) == Term::pair(b, a));
  CHECK(eval_map(associator(A, B, C), Term::pair(Term::pair(a, b), c)) == Term::pair(a, Term::pair(b, c)));
  CHECK(eval_map(left_unitor(A), Term::pair(Term::unit_point(), a)) == a);
  CHECK(eval_map(left_unitor(A), Term::pair(Term::basepoint(Shape::unit()), a)) == Term::basepoint(A));

  auto f = MapDef::abstract("f", A, B);
  Interp interp{{"f", [&](const Term& x) { return x == a ? b : Term::basepoint(B); }}};
  CHECK(eval_map(f, a, interp) == b);
  CHECK(abstract_maps(smash_functor(f, identity(C))).size() == 1);
}

TEST_CASE("pointed functions") {
  auto fs = pointed_functions(3, 2);
  CHECK(fs.size() == 4);
  for (const auto& t : fs) CHECK(t[0] == 0);
  CHECK(pointed_functions(1, 4).size() == 1);
}

TEST_CASE("named diagrams on small models") {
  auto pent = check_diagram(diagram("pentagon"), sizes_for(Shape::smash(Shape::smash(AB, C), Shape::leaf("D")), {2}));
  CHECK(pent.ok);
  CHECK(check_diagram(diagram("involution"), {{"A", 3}, {"B", 3}}).ok);
}

TEST_CASE("coherence diagrams commute for all sizes up to 3") {
  for (const char* name : {"pentagon", "hexagon", "triangle"}) {
    auto d = diagram(name);
    std::size_t checked = 0;
    each_tuple(free_leaves(d.domain()), 3, [&](const std::vector<std::size_t>& s) {
      auto r = check_diagram(d, sizes_for(d.domain(), s));
      CAPTURE(name);
      CHECK(r.ok);
      CHECK_FALSE(r.counterexample);
      checked += r.checked;
    });
    CHECK(checked > 0);
  }
}

TEST_CASE("structure maps are bijections up to size 4") {
  each_tuple(3, 4, [&](const std::vector<std::size_t>& s) {
    Sizes sz{{"A", s[0]}, {"B", s[1]}, {"C", s[2]}};
    for (const auto& m : {associator(A, B, C), swap(A, B), left_unitor(A), right_unitor(A), to_triple(A, B, C),
                          from_triple(A, B, C), left_unitor_inverse(A), right_unitor_inverse(A)}) {
      CAPTURE(m->name());
      auto r = check_bijection(m, sz);
      CHECK(r.well_defined);
      CHECK(r.injective);
      CHECK(r.surjective);
    }
  });
  auto f = MapDef::abstract("f", A, A);
  Interp collapse{{"f", [](const Term&) { return Term::basepoint(A); }}};
  auto r = check_bijection(f, {{"A", 3}}, collapse);
  CHECK_FALSE(r.injective);
  CHECK_FALSE(r.surjective);
}

TEST_CASE("a wrong associator is caught") {
  // it does not even type-check inside the pentagon
  CHECK_THROWS_AS(diagram("pentagon", wrong_associator), Error);

  DiagramSides d{"wrong", associator(A, B, C), wrong_associator(A, B, C), {}, std::nullopt};
  auto r = check_diagram(d, {{"A", 2}, {"B", 2}, {"C", 2}});
  CHECK_FALSE(r.ok);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->lhs != r.counterexample->rhs);
  CHECK(to_json(r)["counterexample"].is_object());
  CHECK(to_json(r)["ok"] == false);
}

TEST_CASE("general pointedness on the naturality diagrams") {
  for (const char* name : {"naturality-alpha", "naturality-beta", "unit-naturality", "unit-naturality-right"}) {
    auto d = diagram(name);
    CHECK_FALSE(abstract_maps(d.lhs).empty());
    each_tuple(free_leaves(d.domain()), 3, [&](const std::vector<std::size_t>& s) {
      CAPTURE(name);
      CHECK(check_diagram(d, sizes_for(d.domain(), s)).ok);
    });
  }
}

TEST_CASE("symbolic passes agree with the oracle") {
  for (const auto& name : diagram_names()) {
    auto d = diagram(name);
    if (!discharge(obligations_for(Homotopy::of(d))).ok()) continue;
    CAPTURE(name);
    each_tuple(free_leaves(d.domain()), 3, [&](const std::vector<std::size_t>& s) {
      CHECK(check_diagram(d, sizes_for(d.domain(), s)).ok);
    });
  }
}

TEST_CASE("size cap") {
  unsetenv("SMASHKIT_MAX_SIZE");
  CHECK(max_model_size() == 4);
  setenv("SMASHKIT_MAX_SIZE", "6", 1);
  CHECK(max_model_size() == 6);
  unsetenv("SMASHKIT_MAX_SIZE");
}
