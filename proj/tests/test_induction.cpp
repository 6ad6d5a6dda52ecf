#include <doctest.h>

#include <random>
#include <set>

#include "smashkit/induction.hpp"
#include "support.hpp"

using namespace smashkit;
using namespace smashkit::testing;

namespace {

const Shape A = Shape::leaf("A");
const Shape B = Shape::leaf("B");
const Shape C = Shape::leaf("C");
const Shape D = Shape::leaf("D");
const Shape AB = Shape::smash(A, B);
const Shape AB_C = Shape::smash(AB, C);
const Shape ABC_D = Shape::smash(AB_C, D);

Homotopy same(const MapRef& f) { return Homotopy::refl(f, f); }

std::set<std::string> tags(const std::vector<Obligation>& obs) {
  std::set<std::string> out;
  for (const auto& o : obs) out.insert(o.tag);
  return out;
}

bool has_pointedness_letter(const NormalWord& w) {
  for (const auto& l : w.letters)
    if (l.letter.core.is(PathExpr::Kind::Pointedness)) return true;
  return false;
}

// Maps out of each test domain built from the library, for f = g checks.
std::vector<MapRef> maps_from(const Shape& s) {
  std::vector<MapRef> out{identity(s)};
  if (s == AB) {
    out.push_back(swap(A, B));
    out.push_back(smash_functor(MapDef::abstract("f", A, Shape::leaf("A'")), MapDef::abstract("g", B, Shape::leaf("B'"))));
    out.push_back(compose(swap(B, A), swap(A, B)));
  } else if (s == AB_C) {
    out.push_back(associator(A, B, C));
    out.push_back(wrong_associator(A, B, C));
    out.push_back(compose(from_triple(A, B, C), to_triple(A, B, C)));
    out.push_back(smash_functor(swap(A, B), identity(C)));
    out.push_back(swap(AB, C));
    out.push_back(compose(permute_triple(Shape::triple(A, B, C), {2, 0, 1}), to_triple(A, B, C)));
  } else if (s == ABC_D) {
    auto pent = diagram("pentagon");
    out.push_back(pent.lhs);
    out.push_back(pent.rhs);
    out.push_back(smash_functor(associator(A, B, C), identity(D)));
    out.push_back(associator(AB, C, D));
    out.push_back(smash_functor(swap(AB, C), identity(D)));
  }
  return out;
}

}  // namespace

TEST_CASE("family counts") {
  auto tri = obligations_triple(same(identity(AB_C)));
  auto quad = obligations_quadruple(same(identity(ABC_D)));
  CHECK(family_count(tri) == 5);
  CHECK(family_count(quad) == 7);
  CHECK(family_count(quad) - family_count(tri) == 2);
  CHECK(tags(tri) == std::set<std::string>{"L17-i", "L17-ii", "L17-iii", "L17-iv", "L17-v"});
  CHECK(tags(quad) ==
        std::set<std::string>{"L18-i", "L18-ii", "L18-iii", "L18-iv", "L18-v", "L18-vi", "L18-vii"});
  CHECK(family_count(obligations_binary(same(identity(AB)))) == 2);

  auto hex = obligations_for(Homotopy::of(diagram("hexagon")));
  CHECK(hex.size() == 6);
  CHECK(family_count(hex) == 6);
}

TEST_CASE("L and R transforms") {
  auto h = same(swap(A, B));
  CHECK(L_transform(h, Term::var("a", A)).empty());
  CHECK(R_transform(h, Term::var("b", B)).empty());

  auto f = MapDef::abstract("f", A, Shape::leaf("A'"));
  auto g = MapDef::abstract("g", B, Shape::leaf("B'"));
  auto fg = smash_functor(f, g);
  CHECK_FALSE(has_pointedness_letter(L_transform(same(fg), Term::basepoint(A))));

  CHECK(Homotopy::of(diagram("hexagon")).points.empty());
}

TEST_CASE("binary obligations") {
  auto inv = obligations_binary(Homotopy::of(diagram("involution")));
  CHECK(inv.size() == 2);
  CHECK(discharge(inv).ok());

  auto f = MapDef::abstract("f", A, B);
  auto g = MapDef::abstract("g", A, B);
  auto report = discharge(obligations_for(Homotopy::refl(f, g)));
  CHECK_FALSE(report.ok());
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->error.find("IllFormed") != std::string::npos);
}

TEST_CASE("hexagon item (iv) has equal columns and refl rows") {
  auto obs = obligations_triple(Homotopy::of(diagram("hexagon")));
  int seen = 0;
  for (const auto& o : obs) {
    if (o.tag != "L17-iv") continue;
    ++seen;
    CHECK(normalize(o.square.top).empty());
    CHECK(normalize(o.square.bottom).empty());
    auto l = normalize(o.square.left), r = normalize(o.square.right);
    CHECK(l == r);
    CHECK_FALSE(l.empty());
  }
  CHECK(seen == 1);
}

TEST_CASE("pointedness squares") {
  CHECK(refl_fillable(pointedness_obligation(same(identity(AB_C))).square));
  CHECK(refl_fillable(pointedness_obligation(Homotopy::of(diagram("hexagon"))).square));
  CHECK(refl_fillable(pointedness_obligation(Homotopy::of(diagram("pentagon"))).square));

  auto ladder = basepoint_ladder(ABC_D);
  auto [s, t] = endpoints(ladder);
  CHECK(s == all_basepoints(ABC_D));
  CHECK(t == Term::basepoint(ABC_D));
  for (const auto& l : normalize(ladder).letters) CHECK(l.letter.core.push_kind() == PushKind::L);
}

TEST_CASE("f = g with h refl always fills") {
  for (const Shape& s : {A, AB, AB_C, ABC_D, Shape::smash(ABC_D, Shape::leaf("E"))}) {
    for (const auto& f : maps_from(s)) {
      CAPTURE(f->name());
      auto report = discharge(obligations_for(same(f)));
      CHECK(report.ok());
    }
  }
  Shape IA = Shape::smash(Shape::unit(), A);
  CHECK(discharge(obligations_for(same(left_unitor(A)))).ok());
  CHECK(discharge(obligations_for(same(identity(IA)))).ok());
}

TEST_CASE("discharge results") {
  CHECK(discharge({}).ok());

  auto pent = obligations_for(Homotopy::of(diagram("pentagon")));
  auto report = discharge(pent);
  CHECK(report.ok());
  CHECK(report.entries.size() == 8);
  for (std::size_t i = 1; i < report.entries.size(); ++i) CHECK(report.entries[i - 1].tag <= report.entries[i].tag);

  // corrupt one side of L18-iii
  bool mutated = false;
  for (auto& o : pent) {
    if (o.tag != "L18-iii") continue;
    auto target = endpoints(o.square.bottom).second;
    auto loop = loop_at(target);
    REQUIRE(loop);
    auto before = normalize(o.square.bottom);
    o.square.bottom = PathExpr::comp({o.square.bottom, *loop});
    REQUIRE(normalize(o.square.bottom) != before);
    mutated = true;
  }
  REQUIRE(mutated);
  auto bad = discharge(pent);
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.first_failure() != nullptr);
  CHECK(bad.first_failure()->tag == "L18-iii");
  CHECK_FALSE(bad.first_failure()->lhs_word == bad.first_failure()->rhs_word);
}

TEST_CASE("shapes outside the supported forms are rejected") {
  Shape right = Shape::smash(A, Shape::smash(B, C));
  CHECK_THROWS_AS(obligations_for(same(identity(right))), Error);
  CHECK(left_nested_leaves(right) == std::nullopt);
  CHECK(left_nested_leaves(ABC_D)->size() == 4);
  CHECK(left_nested({A, B, C}) == AB_C);
}

TEST_CASE("longer left-nested shapes") {
  Shape five = Shape::smash(ABC_D, Shape::leaf("E"));
  auto obs = obligations_nfold(same(identity(five)));
  CHECK(family_count(obs) == 9);
  CHECK(discharge(obs).ok());
}

// ---------------------------------------------------------------------------
// approximation and builder

TEST_CASE("FS sizes follow the recursive definition") {
  CHECK(FsShape::fs_size({2, 2}) == 4);
  std::mt19937 rng(5);
  for (int run = 0; run < 50; ++run) {
    std::vector<std::size_t> sizes(1 + rng() % 5);
    for (auto& s : sizes) s = 1 + rng() % 5;
    std::size_t fs = 1, prod = sizes[0];
    for (std::size_t n = 1; n < sizes.size(); ++n) {
      fs = fs * sizes[n] + prod;
      prod *= sizes[n];
    }
    CHECK(FsShape::fs_size(sizes) == fs);
  }
}

TEST_CASE("gamma, iota and up") {
  FsShape zero({A});
  auto e0 = zero.generic_elements();
  REQUIRE(e0.size() == 1);
  CHECK(zero.gamma(e0[0]) == std::vector<Term>{Term::basepoint(A)});
  CHECK(iota_push(zero, e0[0]) == PathExpr::refl(Term::basepoint(A)));

  FsShape one({A, B});
  auto el = one.generic_elements();
  REQUIRE(el.size() == 2);
  auto g2 = one.gamma(el[1]);
  CHECK(g2[1] == Term::basepoint(B));
  CHECK(g2[0].is(Term::Kind::Var));
  CHECK(one.gamma(el[0])[0] == Term::basepoint(A));

  CHECK(iota(one, FakePoint{true, {}}) == Term::basepoint(AB));
  Term a = Term::var("a", A), b = Term::var("b", B);
  CHECK(iota(one, FakePoint{false, {a, b}}) == Term::pair(a, b));

  FsShape two({A, B, C});
  Term c = Term::var("c", C);
  CHECK(up_coh(two, FakePoint{false, {a, b}}, c) == PathExpr::refl(Term::pair(Term::pair(a, b), c)));
  CHECK(up_coh(two, FakePoint{true, {}}, c) == PathExpr::inv(PathExpr::push_r(AB_C, c)));
  auto lifted = lift_up(FakePoint{false, {a, b}}, c);
  CHECK_FALSE(lifted.base);
  CHECK(lifted.coords.size() == 3);
}


TEST_CASE("built homotopy for refl data is trivial") {
  for (const auto& inst : instance_pool()) {
    if (inst.f != inst.g) continue;
    CAPTURE(inst.label);
    FsShape fs(*left_nested_leaves(inst.f->domain()));
    auto r = build_homotopy(fs, FakeHomotopy::refl(fs, inst.f, inst.g));
    for (const auto& p : r.homotopy.points) CHECK(normalize(p.path).empty());
    CHECK(normalize(r.homotopy.at_base()).empty());
  }
}

TEST_CASE("builder on randomized instances") {
  std::mt19937 rng(27);
  auto pool = instance_pool();
  int mutants = 0;
  for (int run = 0; run < 20; ++run) {
    const auto& inst = pool[rng() % pool.size()];
    CAPTURE(inst.label);
    CAPTURE(run);
    auto leaves = *left_nested_leaves(inst.f->domain());
    REQUIRE(leaves.size() <= 4);
    FsShape fs(leaves);
    PathExpr loop = random_loop(inst.f->codomain(), rng);
    FakeHomotopy pt = twisted(fs, inst.f, inst.g, loop);

    BuildResult r = build_homotopy(fs, pt);
    const Homotopy& h = r.homotopy;

    // value at the basepoint and at tuples are p~'s, syntactically
    CHECK(h.at_base() == pt.base);
    std::vector<Term> generic;
    for (const auto& leaf : leaves) generic.push_back(generic_var(leaf));
    CHECK(h.at(left_nested_point(generic)) == pt.at(generic));

    // on images of push constructors, after normalization
    for (const auto& x : fs.generic_elements()) {
      PathExpr col = iota_push(fs, x);
      Term src = iota(fs, FakePoint{false, fs.gamma(x)});
      Square sq{h.at(src), h.at_base(), PathExpr::ap(inst.f, col), PathExpr::ap(inst.g, col)};
      CHECK(refl_fillable(sq));
    }
    CHECK(discharge(r.checked).ok());

    // corrupting any one push square is caught
    for (int k = 0; k <= fs.n(); ++k) {
      FakeHomotopy bad = pt;
      auto target = endpoints(bad.squares[k].bottom).second;
      auto l = loop_at(target);
      if (!l) continue;
      auto before = normalize(bad.squares[k].bottom);
      bad.squares[k].bottom = PathExpr::comp({bad.squares[k].bottom, *l});
      REQUIRE(normalize(bad.squares[k].bottom) != before);
      ++mutants;
      try {
        build_homotopy(fs, bad);
        FAIL("corrupted square accepted");
      } catch (const Error& e) {
        CHECK(e.code() == Errc::ObligationFailed);
      }
    }
  }
  CHECK(mutants >= 20);
}
