#include "smashkit/structure_maps.hpp"

#include <algorithm>
#include <map>

namespace smashkit {

namespace {

PushKind push_at(int slot) {
  static constexpr PushKind kinds[] = {PushKind::P0, PushKind::P1, PushKind::P2};
  return kinds[slot];
}

Term star(const Shape& s) { return Term::basepoint(s); }
Term var(const Shape& s) { return generic_var(s); }

std::string subscript(std::initializer_list<Shape> shapes) {
  std::string s = "_{";
  bool first = true;
  for (const auto& x : shapes) {
    s += (first ? "" : ",") + x.str();
    first = false;
  }
  return s + "}";
}

}  // namespace

MapRef identity(const Shape& s) {
  Term x = var(s);
  return MapDef::table("1" + subscript({s}), s, s, {{x, x}}, {});
}

MapRef swap(const Shape& a, const Shape& b) {
  Shape dom = Shape::smash(a, b), cod = Shape::smash(b, a);
  Term x = var(a), y = var(b);
  std::vector<PointClause> points{{star(dom), star(cod)}, {Term::pair(x, y), Term::pair(y, x)}};
  std::vector<PathClause> paths{
      {Term::hole(dom), dom, PushKind::L, {x}, PathExpr::push_r(cod, x)},
      {Term::hole(dom), dom, PushKind::R, {y}, PathExpr::push_l(cod, y)},
  };
  return MapDef::table("beta" + subscript({a, b}), dom, cod, std::move(points), std::move(paths));
}

MapRef smash_functor(const MapRef& f, const MapRef& g) {
  Shape dom = Shape::smash(f->domain(), g->domain());
  Shape cod = Shape::smash(f->codomain(), g->codomain());
  Term x = var(f->domain()), y = var(g->domain());
  Term fx = Term::app(f, x), gy = Term::app(g, y);
  std::vector<PointClause> points{{star(dom), star(cod)}, {Term::pair(x, y), Term::pair(fx, gy)}};
  std::vector<PathClause> paths{
      {Term::hole(dom), dom, PushKind::L, {x},
       PathExpr::comp({PathExpr::ap_ctx(Term::pair(fx, Term::hole(g->codomain())), PathExpr::pointedness(g)),
                       PathExpr::push_l(cod, fx)})},
      {Term::hole(dom), dom, PushKind::R, {y},
       PathExpr::comp({PathExpr::ap_ctx(Term::pair(Term::hole(f->codomain()), gy), PathExpr::pointedness(f)),
                       PathExpr::push_r(cod, gy)})},
  };
  return MapDef::table("(" + f->name() + "^" + g->name() + ")", dom, cod, std::move(points), std::move(paths));
}

MapRef to_triple(const Shape& a, const Shape& b, const Shape& c) {
  Shape ab = Shape::smash(a, b), dom = Shape::smash(ab, c), cod = Shape::triple(a, b, c);
  Term x = var(a), y = var(b), z = var(c);
  Term inner = Term::pair(Term::hole(ab), z);
  std::vector<PointClause> points{
      {star(dom), star(cod)},
      {Term::pair(star(ab), z), star(cod)},
      {Term::pair(Term::pair(x, y), z), Term::triple(x, y, z)},
  };
  std::vector<PathClause> paths{
      {inner, ab, PushKind::L, {x}, PathExpr::gen(cod, PushKind::P1, {x, z})},
      {inner, ab, PushKind::R, {y}, PathExpr::gen(cod, PushKind::P0, {y, z})},
      {Term::hole(dom), dom, PushKind::L, {star(ab)}, PathExpr::refl(star(cod))},
      {Term::hole(dom), dom, PushKind::L, {Term::pair(x, y)}, PathExpr::gen(cod, PushKind::P2, {x, y})},
      {Term::hole(dom), dom, PushKind::R, {z}, PathExpr::refl(star(cod))},
  };
  std::vector<TwoCellRow> cells{
      {"ap_{ap_{<-,c>}}(push_lr)", "push_{0,1}(c)"},
      {"ap_{push_l}(push_l(a))", "push_{1,2}(a)"},
      {"ap_{push_l}(push_r(b))", "push_{0,2}(b)"},
      {"ap_{ap_{push_l}}(push_lr)", "push_{0,1,2}"},
      {"push_lr", "refl"},
  };
  return MapDef::table("to3" + subscript({a, b, c}), dom, cod, std::move(points), std::move(paths), std::nullopt,
                       std::move(cells));
}

MapRef from_triple(const Shape& a, const Shape& b, const Shape& c) {
  Shape ab = Shape::smash(a, b), cod = Shape::smash(ab, c), dom = Shape::triple(a, b, c);
  Term x = var(a), y = var(b), z = var(c);
  Term inner = Term::pair(Term::hole(ab), z);
  std::vector<PointClause> points{
      {star(dom), star(cod)},
      {Term::triple(x, y, z), Term::pair(Term::pair(x, y), z)},
  };
  std::vector<PathClause> paths{
      {Term::hole(dom), dom, PushKind::P0, {y, z},
       PathExpr::comp({PathExpr::ap_ctx(inner, PathExpr::push_r(ab, y)), PathExpr::push_r(cod, z)})},
      {Term::hole(dom), dom, PushKind::P1, {x, z},
       PathExpr::comp({PathExpr::ap_ctx(inner, PathExpr::push_l(ab, x)), PathExpr::push_r(cod, z)})},
      {Term::hole(dom), dom, PushKind::P2, {x, y}, PathExpr::push_l(cod, Term::pair(x, y))},
  };
  return MapDef::table("from3" + subscript({a, b, c}), dom, cod, std::move(points), std::move(paths));
}

MapRef permute_triple(const Shape& triple, std::array<int, 3> perm) {
  if (triple.kind() != Shape::Kind::Triple) throw Error(Errc::SortMismatch, "permute_triple needs a triple shape");
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) throw Error(Errc::IllFormed, "not a permutation of three slots");
  Shape cod = Shape::triple(triple.child(perm[0]), triple.child(perm[1]), triple.child(perm[2]));
  std::array<Term, 3> v{var(triple.child(0)), var(triple.child(1)), var(triple.child(2))};
  std::vector<PointClause> points{
      {star(triple), star(cod)},
      {Term::triple(v[0], v[1], v[2]), Term::triple(v[perm[0]], v[perm[1]], v[perm[2]])},
  };
  std::vector<PathClause> paths;
  for (int i = 0; i < 3; ++i) {
    int j = static_cast<int>(std::find(perm.begin(), perm.end(), i) - perm.begin());
    std::vector<Term> in_args, out_args;
    for (int k = 0; k < 3; ++k) {
      if (k != i) in_args.push_back(v[k]);
      if (k != j) out_args.push_back(v[perm[k]]);
    }
    paths.push_back({Term::hole(triple), triple, push_at(i), in_args, PathExpr::gen(cod, push_at(j), out_args)});
  }
  std::string name = "perm" + std::to_string(perm[0]) + std::to_string(perm[1]) + std::to_string(perm[2]) + "_" +
                     triple.str();
  return MapDef::table(name, triple, cod, std::move(points), std::move(paths));
}

MapRef associator(const Shape& a, const Shape& b, const Shape& c) {
  return MapDef::composite({to_triple(a, b, c), permute_triple(Shape::triple(a, b, c), {1, 2, 0}),
                            from_triple(b, c, a), swap(Shape::smash(b, c), a)},
                           "alpha" + subscript({a, b, c}));
}

MapRef wrong_associator(const Shape& a, const Shape& b, const Shape& c) {
  Shape ab = Shape::smash(a, b), dom = Shape::smash(ab, c);
  Shape ac = Shape::smash(a, c), cod = Shape::smash(b, ac);
  Term x = var(a), y = var(b), z = var(c);
  Term inner = Term::pair(Term::hole(ab), z);
  std::vector<PointClause> points{
      {star(dom), star(cod)},
      {Term::pair(star(ab), z), star(cod)},
      {Term::pair(Term::pair(x, y), z), Term::pair(y, Term::pair(x, z))},
  };
  std::vector<PathClause> paths{
      {inner, ab, PushKind::L, {x}, PathExpr::push_r(cod, Term::pair(x, z))},
      {inner, ab, PushKind::R, {y},
       PathExpr::comp({PathExpr::ap_ctx(Term::pair(y, Term::hole(ac)), PathExpr::push_r(ac, z)),
                       PathExpr::push_l(cod, y)})},
      {Term::hole(dom), dom, PushKind::L, {star(ab)}, PathExpr::refl(star(cod))},
      {Term::hole(dom), dom, PushKind::L, {Term::pair(x, y)},
       PathExpr::comp({PathExpr::ap_ctx(Term::pair(y, Term::hole(ac)), PathExpr::push_l(ac, x)),
                       PathExpr::push_l(cod, y)})},
      {Term::hole(dom), dom, PushKind::R, {z}, PathExpr::refl(star(cod))},
  };
  return MapDef::table("alpha~" + subscript({a, b, c}), dom, cod, std::move(points), std::move(paths));
}

MapRef left_unitor(const Shape& a) {
  Shape i = Shape::unit(), dom = Shape::smash(i, a);
  Term x = var(a);
  std::vector<PointClause> points{
      {star(dom), star(a)},
      {Term::pair(star(i), x), star(a)},
      {Term::pair(Term::unit_point(), x), x},
  };
  std::vector<PathClause> paths{
      {Term::hole(dom), dom, PushKind::L, {star(i)}, PathExpr::refl(star(a))},
      {Term::hole(dom), dom, PushKind::L, {Term::unit_point()}, PathExpr::refl(star(a))},
      {Term::hole(dom), dom, PushKind::R, {x}, PathExpr::refl(star(a))},
  };
  return MapDef::table("lambda" + subscript({a}), dom, a, std::move(points), std::move(paths));
}

MapRef right_unitor(const Shape& a) {
  Shape i = Shape::unit(), dom = Shape::smash(a, i);
  Term x = var(a);
  std::vector<PointClause> points{
      {star(dom), star(a)},
      {Term::pair(x, star(i)), star(a)},
      {Term::pair(x, Term::unit_point()), x},
  };
  std::vector<PathClause> paths{
      {Term::hole(dom), dom, PushKind::R, {star(i)}, PathExpr::refl(star(a))},
      {Term::hole(dom), dom, PushKind::R, {Term::unit_point()}, PathExpr::refl(star(a))},
      {Term::hole(dom), dom, PushKind::L, {x}, PathExpr::refl(star(a))},
  };
  return MapDef::table("rho" + subscript({a}), dom, a, std::move(points), std::move(paths));
}

MapRef left_unitor_inverse(const Shape& a) {
  Shape cod = Shape::smash(Shape::unit(), a);
  Term x = var(a);
  return MapDef::table("lambda^-1" + subscript({a}), a, cod, {{x, Term::pair(Term::unit_point(), x)}}, {},
                       PathExpr::push_l(cod, Term::unit_point()));
}

MapRef right_unitor_inverse(const Shape& a) {
  Shape cod = Shape::smash(a, Shape::unit());
  Term x = var(a);
  return MapDef::table("rho^-1" + subscript({a}), a, cod, {{x, Term::pair(x, Term::unit_point())}}, {},
                       PathExpr::push_r(cod, Term::unit_point()));
}

// ---------------------------------------------------------------------------
// Diagrams

namespace {

const Shape A = Shape::leaf("A"), B = Shape::leaf("B"), C = Shape::leaf("C"), D = Shape::leaf("D");

Shape sm(const Shape& l, const Shape& r) { return Shape::smash(l, r); }
MapRef chain(std::vector<MapRef> stages) { return MapDef::composite(std::move(stages)); }

DiagramSides pentagon(const AssociatorFactory& alpha) {
  MapRef lhs = chain({alpha(sm(A, B), C, D), alpha(A, B, sm(C, D))});
  MapRef rhs = chain({smash_functor(alpha(A, B, C), identity(D)), alpha(A, sm(B, C), D),
                      smash_functor(identity(A), alpha(B, C, D))});
  return {"pentagon", lhs, rhs, {}, std::nullopt};
}

DiagramSides hexagon(const AssociatorFactory& alpha) {
  MapRef h0 = chain({smash_functor(swap(A, B), identity(C)), alpha(B, A, C), smash_functor(identity(B), swap(A, C))});
  MapRef h1 = chain({alpha(A, B, C), swap(A, sm(B, C)), alpha(B, C, A)});
  return {"hexagon", h0, h1, {}, std::nullopt};
}

DiagramSides triangle(const AssociatorFactory& alpha) {
  Shape i = Shape::unit();
  MapRef lhs = smash_functor(right_unitor(A), identity(B));
  MapRef rhs = chain({alpha(A, i, B), smash_functor(identity(A), left_unitor(B))});
  // At <<a,*>,b> the sides give <*A,b> and <a,*B>, both glued to the basepoint.
  // The detour through <*A,*B> makes the a = *A instance reduce to push_r alone.
  Shape ab = sm(A, B);
  Term a = var(A), b = var(B);
  PathExpr h = PathExpr::comp({PathExpr::push_r(ab, b), PathExpr::inv(PathExpr::push_r(ab, star(B))),
                               PathExpr::push_l(ab, star(A)), PathExpr::inv(PathExpr::push_l(ab, a))});
  return {"triangle", lhs, rhs, {{Term::pair(Term::pair(a, star(i)), b), h}}, std::nullopt};
}

DiagramSides involution() {
  return {"involution", chain({swap(A, B), swap(B, A)}), identity(sm(A, B)), {}, std::nullopt};
}

const Shape A2 = Shape::leaf("A'"), B2 = Shape::leaf("B'"), C2 = Shape::leaf("C'");

DiagramSides naturality_alpha(const AssociatorFactory& alpha) {
  MapRef f = MapDef::abstract("f", A, A2), g = MapDef::abstract("g", B, B2), h = MapDef::abstract("h", C, C2);
  MapRef lhs = chain({smash_functor(smash_functor(f, g), h), alpha(A2, B2, C2)});
  MapRef rhs = chain({alpha(A, B, C), smash_functor(f, smash_functor(g, h))});
  return {"naturality-alpha", lhs, rhs, {}, std::nullopt};
}

DiagramSides naturality_beta() {
  MapRef f = MapDef::abstract("f", A, A2), g = MapDef::abstract("g", B, B2);
  MapRef lhs = chain({smash_functor(f, g), swap(A2, B2)});
  MapRef rhs = chain({swap(A, B), smash_functor(g, f)});
  return {"naturality-beta", lhs, rhs, {}, std::nullopt};
}

DiagramSides unit_naturality(bool left) {
  MapRef f = MapDef::abstract("f", A, A2);
  Shape i = Shape::unit();
  if (left) {
    MapRef lhs = chain({smash_functor(identity(i), f), left_unitor(A2)});
    MapRef rhs = chain({left_unitor(A), f});
    return {"unit-naturality", lhs, rhs, {}, std::nullopt};
  }
  MapRef lhs = chain({smash_functor(f, identity(i)), right_unitor(A2)});
  MapRef rhs = chain({right_unitor(A), f});
  return {"unit-naturality-right", lhs, rhs, {}, std::nullopt};
}

DiagramSides unitor_roundtrip(bool left) {
  Shape i = Shape::unit();
  Term a = var(A);
  if (left) {
    Shape dom = sm(i, A);
    PathExpr h = PathExpr::comp({PathExpr::push_l(dom, Term::unit_point()), PathExpr::inv(PathExpr::push_l(dom, star(i))),
                                 PathExpr::push_r(dom, star(A)), PathExpr::inv(PathExpr::push_r(dom, a))});
    return {"unitor-left", chain({left_unitor(A), left_unitor_inverse(A)}), identity(dom),
            {{Term::pair(star(i), a), h}}, std::nullopt};
  }
  Shape dom = sm(A, i);
  PathExpr h = PathExpr::comp({PathExpr::push_r(dom, Term::unit_point()), PathExpr::inv(PathExpr::push_r(dom, star(i))),
                               PathExpr::push_l(dom, star(A)), PathExpr::inv(PathExpr::push_l(dom, a))});
  return {"unitor-right", chain({right_unitor(A), right_unitor_inverse(A)}), identity(dom),
          {{Term::pair(a, star(i)), h}}, PathExpr::push_r(dom, star(i))};
}

DiagramSides unitor_section(bool left) {
  if (left) return {"unitor-left-inverse", chain({left_unitor_inverse(A), left_unitor(A)}), identity(A), {}, std::nullopt};
  return {"unitor-right-inverse", chain({right_unitor_inverse(A), right_unitor(A)}), identity(A), {}, std::nullopt};
}

}  // namespace

const std::vector<std::string>& diagram_names() {
  static const std::vector<std::string> names{
      "pentagon",        "hexagon",          "triangle",         "involution",
      "naturality-alpha", "naturality-beta", "unit-naturality",  "unit-naturality-right",
      "unitor-left",     "unitor-right",     "unitor-left-inverse", "unitor-right-inverse",
  };
  return names;
}

DiagramSides diagram(const std::string& name, const AssociatorFactory& alpha) {
  if (name == "pentagon") return pentagon(alpha);
  if (name == "hexagon") return hexagon(alpha);
  if (name == "triangle") return triangle(alpha);
  if (name == "involution") return involution();
  if (name == "naturality-alpha" || name == "naturality-α") return naturality_alpha(alpha);
  if (name == "naturality-beta" || name == "naturality-β") return naturality_beta();
  if (name == "unit-naturality") return unit_naturality(true);
  if (name == "unit-naturality-right") return unit_naturality(false);
  if (name == "unitor-left") return unitor_roundtrip(true);
  if (name == "unitor-right") return unitor_roundtrip(false);
  if (name == "unitor-left-inverse") return unitor_section(true);
  if (name == "unitor-right-inverse") return unitor_section(false);
  throw Error(Errc::UnknownDiagram, "no diagram named '" + name + "'");
}

std::string to_dot(const DiagramSides& d) {
  std::map<std::string, int> ids;
  std::string nodes, edges;
  auto node = [&](const Shape& s) {
    auto [it, fresh] = ids.emplace(s.str(), static_cast<int>(ids.size()));
    if (fresh) nodes += "  n" + std::to_string(it->second) + " [label=\"" + s.str() + "\"];\n";
    return "n" + std::to_string(it->second);
  };
  auto side = [&](const MapRef& m, const char* style) {
    std::vector<MapRef> stages = m->kind() == MapDef::Kind::Composite ? m->stages() : std::vector<MapRef>{m};
    for (const auto& s : stages) {
      std::string from = node(s->domain()), to = node(s->codomain());
      edges += "  " + from + " -> " + to + " [label=\"" + s->name() + "\", style=" + style + "];\n";
    }
  };
  node(d.domain());
  side(d.lhs, "solid");
  side(d.rhs, "dashed");
  return "digraph \"" + d.name + "\" {\n  rankdir=LR;\n" + nodes + edges + "}\n";
}

}  // namespace smashkit
