#include "smashkit/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace smashkit {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::IllChained: return "IllChained";
    case Errc::UnknownClause: return "UnknownClause";
    case Errc::SortMismatch: return "SortMismatch";
    case Errc::TwoCellEncountered: return "TwoCellEncountered";
    case Errc::IllFormed: return "IllFormed";
    case Errc::NonConstructorInput: return "NonConstructorInput";
    case Errc::UnknownDiagram: return "UnknownDiagram";
    case Errc::ObligationFailed: return "ObligationFailed";
  }
  return "?";
}

const char* to_string(PushKind k) {
  switch (k) {
    case PushKind::L: return "push_l";
    case PushKind::R: return "push_r";
    case PushKind::P0: return "push_0";
    case PushKind::P1: return "push_1";
    case PushKind::P2: return "push_2";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Shape

struct Shape::Node {
  Kind kind = Kind::Leaf;
  std::string name;
  bool unit = false;
  std::vector<Shape> children;
  std::string str;
};

Shape::Shape() : Shape(leaf("A")) {}

Shape Shape::leaf(std::string name) {
  if (name.empty()) throw Error(Errc::IllFormed, "empty leaf name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->str = name;
  n->name = std::move(name);
  return Shape(std::move(n));
}

Shape Shape::unit() {
  static const Shape u = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Leaf;
    n->name = "I";
    n->str = "I";
    n->unit = true;
    return Shape(std::move(n));
  }();
  return u;
}

Shape Shape::smash(Shape left, Shape right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Smash;
  n->str = "(" + left.str() + "^" + right.str() + ")";
  n->children = {std::move(left), std::move(right)};
  return Shape(std::move(n));
}

Shape Shape::triple(Shape a, Shape b, Shape c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Triple;
  n->str = "[" + a.str() + "," + b.str() + "," + c.str() + "]";
  n->children = {std::move(a), std::move(b), std::move(c)};
  return Shape(std::move(n));
}

Shape::Kind Shape::kind() const { return node_->kind; }
bool Shape::is_unit() const { return node_->unit; }
const std::string& Shape::name() const { return node_->name; }
std::size_t Shape::arity() const { return node_->children.size(); }
const Shape& Shape::child(std::size_t i) const { return node_->children.at(i); }
const std::string& Shape::str() const { return node_->str; }

std::vector<std::string> Shape::leaf_names() const {
  std::vector<std::string> out;
  std::function<void(const Shape&)> go = [&](const Shape& s) {
    if (s.is_leaf()) {
      out.push_back(s.name());
      return;
    }
    for (std::size_t i = 0; i < s.arity(); ++i) go(s.child(i));
  };
  go(*this);
  return out;
}

bool Shape::well_formed() const {
  auto names = leaf_names();
  std::set<std::string> seen(names.begin(), names.end());
  return !names.empty() && seen.size() == names.size();
}

bool operator==(const Shape& a, const Shape& b) {
  return a.node_ == b.node_ || (a.node_->unit == b.node_->unit && a.node_->str == b.node_->str);
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind = Kind::Basepoint;
  Shape shape;
  std::string name;
  MapRef map;
  std::vector<Term> children;
  std::string key;
  bool has_hole = false;
  bool has_var = false;
  bool has_app = false;
};

Term::Term() : Term(basepoint(Shape())) {}

Term Term::basepoint(const Shape& at) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Basepoint;
  n->shape = at;
  n->key = "*" + at.str();
  return Term(std::move(n));
}

Term Term::unit_point() {
  static const Term o = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::UnitPoint;
    n->shape = Shape::unit();
    n->key = "o";
    return Term(std::move(n));
  }();
  return o;
}

Term Term::pair(Term l, Term r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->shape = Shape::smash(l.shape(), r.shape());
  n->key = "<" + l.key() + "," + r.key() + ">";
  n->has_hole = l.node_->has_hole || r.node_->has_hole;
  n->has_var = l.node_->has_var || r.node_->has_var;
  n->has_app = l.node_->has_app || r.node_->has_app;
  n->children = {std::move(l), std::move(r)};
  return Term(std::move(n));
}

Term Term::triple(Term a, Term b, Term c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::TriplePt;
  n->shape = Shape::triple(a.shape(), b.shape(), c.shape());
  n->key = "<" + a.key() + "," + b.key() + "," + c.key() + ">";
  for (const Term* t : {&a, &b, &c}) {
    n->has_hole = n->has_hole || t->node_->has_hole;
    n->has_var = n->has_var || t->node_->has_var;
    n->has_app = n->has_app || t->node_->has_app;
  }
  n->children = {std::move(a), std::move(b), std::move(c)};
  return Term(std::move(n));
}

Term Term::var(std::string name, Shape sort) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->key = name + ":" + sort.str();
  n->name = std::move(name);
  n->shape = std::move(sort);
  n->has_var = true;
  return Term(std::move(n));
}

Term Term::app(MapRef map, Term arg) {
  if (!map) throw Error(Errc::IllFormed, "application of a null map");
  if (arg.shape() != map->domain())
    throw Error(Errc::SortMismatch, map->name() + " expects " + map->domain().str() + ", got " + arg.str());
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->shape = map->codomain();
  n->key = map->name() + "(" + arg.key() + ")";
  n->has_hole = arg.node_->has_hole;
  n->has_var = arg.node_->has_var;
  n->has_app = true;
  n->map = std::move(map);
  n->children = {std::move(arg)};
  return Term(std::move(n));
}

Term Term::hole(Shape expected) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hole;
  n->key = "-:" + expected.str();
  n->shape = std::move(expected);
  n->has_hole = true;
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const Shape& Term::shape() const { return node_->shape; }
const std::string& Term::var_name() const { return node_->name; }
const MapRef& Term::map() const { return node_->map; }
std::size_t Term::arity() const { return node_->children.size(); }
const Term& Term::child(std::size_t i) const { return node_->children.at(i); }
bool Term::has_hole() const { return node_->has_hole; }
bool Term::is_ground() const { return !node_->has_hole && !node_->has_var && !node_->has_app; }
const std::string& Term::key() const { return node_->key; }

std::string Term::str() const {
  switch (kind()) {
    case Kind::Basepoint:
      if (shape().is_leaf()) return "*" + shape().name();
      return shape().kind() == Shape::Kind::Smash ? "*^" : "*^3";
    case Kind::UnitPoint: return "o";
    case Kind::Pair: return "<" + child(0).str() + "," + child(1).str() + ">";
    case Kind::TriplePt: return "<" + child(0).str() + "," + child(1).str() + "," + child(2).str() + ">";
    case Kind::Var: return var_name();
    case Kind::App: return map()->name() + "(" + child(0).str() + ")";
    case Kind::Hole: return "-";
  }
  return "?";
}

bool operator==(const Term& a, const Term& b) { return a.node_ == b.node_ || a.node_->key == b.node_->key; }

namespace {

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case Term::Kind::Pair: return Term::pair(std::move(kids[0]), std::move(kids[1]));
    case Term::Kind::TriplePt: return Term::triple(std::move(kids[0]), std::move(kids[1]), std::move(kids[2]));
    case Term::Kind::App: return Term::app(t.map(), std::move(kids[0]));
    default: return t;
  }
}

std::string lower_leaves(const Shape& s) {
  std::string out;
  for (const auto& n : s.leaf_names())
    for (char ch : n) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return out;
}

}  // namespace

Term substitute(const Term& t, const Binding& binding) {
  if (binding.empty()) return t;
  if (t.is(Term::Kind::Var)) {
    auto it = binding.find(t.var_name());
    if (it == binding.end()) return t;
    if (it->second.shape() != t.shape())
      throw Error(Errc::SortMismatch,
                  "variable " + t.var_name() + " : " + t.shape().str() + " replaced by " + it->second.str() +
                      " : " + it->second.shape().str());
    return it->second;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    kids.push_back(substitute(t.child(i), binding));
    changed = changed || kids.back() != t.child(i);
  }
  return changed ? rebuild(t, std::move(kids)) : t;
}

Term plug(const Term& ctx, const Term& t) {
  if (ctx.is(Term::Kind::Hole)) {
    if (ctx.shape() != t.shape())
      throw Error(Errc::SortMismatch, "hole of shape " + ctx.shape().str() + " plugged with " + t.str());
    return t;
  }
  if (!ctx.has_hole()) return ctx;
  std::vector<Term> kids;
  for (std::size_t i = 0; i < ctx.arity(); ++i) kids.push_back(plug(ctx.child(i), t));
  return rebuild(ctx, std::move(kids));
}

Term generic_var(const Shape& sort) { return Term::var(lower_leaves(sort), sort); }

Term all_basepoints(const Shape& s) {
  switch (s.kind()) {
    case Shape::Kind::Leaf: return Term::basepoint(s);
    case Shape::Kind::Smash: return Term::pair(all_basepoints(s.child(0)), all_basepoints(s.child(1)));
    case Shape::Kind::Triple:
      return Term::triple(all_basepoints(s.child(0)), all_basepoints(s.child(1)), all_basepoints(s.child(2)));
  }
  return Term::basepoint(s);
}

Term generic_point(const Shape& s) {
  switch (s.kind()) {
    case Shape::Kind::Leaf: return generic_var(s);
    case Shape::Kind::Smash: return Term::pair(generic_point(s.child(0)), generic_point(s.child(1)));
    case Shape::Kind::Triple:
      return Term::triple(generic_point(s.child(0)), generic_point(s.child(1)), generic_point(s.child(2)));
  }
  return generic_var(s);
}

bool match(const Term& pattern, const Term& t, Binding& binding) {
  if (pattern.is(Term::Kind::Var)) {
    auto it = binding.find(pattern.var_name());
    if (it != binding.end()) return it->second == t;
    if (pattern.shape() != t.shape()) return false;
    binding.emplace(pattern.var_name(), t);
    return true;
  }
  if (pattern.kind() != t.kind()) return false;
  switch (pattern.kind()) {
    case Term::Kind::Basepoint:
    case Term::Kind::Hole: return pattern.shape() == t.shape();
    case Term::Kind::UnitPoint: return true;
    case Term::Kind::App:
      if (pattern.map()->name() != t.map()->name()) return false;
      [[fallthrough]];
    case Term::Kind::Pair:
    case Term::Kind::TriplePt:
      for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match(pattern.child(i), t.child(i), binding)) return false;
      return true;
    case Term::Kind::Var: break;
  }
  return false;
}

// ---------------------------------------------------------------------------
// PathExpr

struct PathExpr::Node {
  Kind kind = Kind::Refl;
  Term term;
  Shape node;
  PushKind push = PushKind::L;
  std::vector<Term> args;
  MapRef map;
  std::string name;
  Term ctx;
  std::vector<PathExpr> parts;
  std::string key;
};

PathExpr::PathExpr() : PathExpr(refl(Term())) {}

PathExpr PathExpr::refl(Term at) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Refl;
  n->key = "refl(" + at.key() + ")";
  n->term = std::move(at);
  return PathExpr(std::move(n));
}

PathExpr PathExpr::gen(Shape node, PushKind kind, std::vector<Term> args) {
  gen_endpoints(node, kind, args);  // validates arity and sorts
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->key = std::string(to_string(kind)) + "@" + node.str() + "(";
  for (std::size_t i = 0; i < args.size(); ++i) n->key += (i ? "," : "") + args[i].key();
  n->key += ")";
  n->node = std::move(node);
  n->push = kind;
  n->args = std::move(args);
  return PathExpr(std::move(n));
}

PathExpr PathExpr::pointedness(MapRef map) {
  if (!map) throw Error(Errc::IllFormed, "pointedness of a null map");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pointedness;
  n->key = "pt(" + map->name() + ")";
  n->map = std::move(map);
  return PathExpr(std::move(n));
}

PathExpr PathExpr::two_cell(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::TwoCell;
  n->key = "2c(" + name + ")";
  n->name = std::move(name);
  return PathExpr(std::move(n));
}

PathExpr PathExpr::inv(PathExpr p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inv;
  n->key = "inv(" + p.key() + ")";
  n->parts = {std::move(p)};
  return PathExpr(std::move(n));
}

PathExpr PathExpr::comp(std::vector<PathExpr> parts) {
  if (parts.empty()) throw Error(Errc::IllFormed, "empty composite path");
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comp;
  n->key = "comp(";
  for (std::size_t i = 0; i < parts.size(); ++i) n->key += (i ? ";" : "") + parts[i].key();
  n->key += ")";
  n->parts = std::move(parts);
  return PathExpr(std::move(n));
}

PathExpr PathExpr::ap(MapRef map, PathExpr p) {
  if (!map) throw Error(Errc::IllFormed, "ap of a null map");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ap;
  n->key = "ap[" + map->name() + "](" + p.key() + ")";
  n->map = std::move(map);
  n->parts = {std::move(p)};
  return PathExpr(std::move(n));
}

PathExpr PathExpr::ap_ctx(Term ctx, PathExpr p) {
  if (!ctx.has_hole()) throw Error(Errc::IllFormed, "context without a hole: " + ctx.str());
  if (ctx.is(Term::Kind::Hole)) return p;
  auto n = std::make_shared<Node>();
  n->kind = Kind::ApCtx;
  n->key = "apc[" + ctx.key() + "](" + p.key() + ")";
  n->ctx = std::move(ctx);
  n->parts = {std::move(p)};
  return PathExpr(std::move(n));
}

PathExpr::Kind PathExpr::kind() const { return node_->kind; }
const Term& PathExpr::term() const { return node_->term; }
const Shape& PathExpr::node() const { return node_->node; }
PushKind PathExpr::push_kind() const { return node_->push; }
const std::vector<Term>& PathExpr::args() const { return node_->args; }
const MapRef& PathExpr::map() const { return node_->map; }
const std::string& PathExpr::name() const { return node_->name; }
const Term& PathExpr::ctx() const { return node_->ctx; }
const std::vector<PathExpr>& PathExpr::parts() const { return node_->parts; }
const std::string& PathExpr::key() const { return node_->key; }

bool operator==(const PathExpr& a, const PathExpr& b) { return a.node_ == b.node_ || a.node_->key == b.node_->key; }

std::string PathExpr::str() const {
  switch (kind()) {
    case Kind::Refl: return "refl";
    case Kind::Gen: {
      std::string s = std::string(to_string(push_kind())) + "(";
      for (std::size_t i = 0; i < args().size(); ++i) s += (i ? "," : "") + args()[i].str();
      return s + ")";
    }
    case Kind::Pointedness: return "*_" + map()->name();
    case Kind::TwoCell: return name();
    case Kind::Inv: return "(" + parts()[0].str() + ")^-1";
    case Kind::Comp: {
      std::string s;
      for (std::size_t i = 0; i < parts().size(); ++i) s += (i ? " . " : "") + parts()[i].str();
      return s;
    }
    case Kind::Ap: return "ap_" + map()->name() + "(" + parts()[0].str() + ")";
    case Kind::ApCtx: return "ap_{" + ctx().str() + "}(" + parts()[0].str() + ")";
  }
  return "?";
}

PathExpr substitute(const PathExpr& p, const Binding& binding) {
  if (binding.empty()) return p;
  switch (p.kind()) {
    case PathExpr::Kind::Refl: return PathExpr::refl(substitute(p.term(), binding));
    case PathExpr::Kind::Gen: {
      std::vector<Term> args;
      for (const auto& a : p.args()) args.push_back(substitute(a, binding));
      return PathExpr::gen(p.node(), p.push_kind(), std::move(args));
    }
    case PathExpr::Kind::Pointedness:
    case PathExpr::Kind::TwoCell: return p;
    case PathExpr::Kind::Inv: return PathExpr::inv(substitute(p.parts()[0], binding));
    case PathExpr::Kind::Comp: {
      std::vector<PathExpr> parts;
      for (const auto& q : p.parts()) parts.push_back(substitute(q, binding));
      return PathExpr::comp(std::move(parts));
    }
    case PathExpr::Kind::Ap: return PathExpr::ap(p.map(), substitute(p.parts()[0], binding));
    case PathExpr::Kind::ApCtx:
      return PathExpr::ap_ctx(substitute(p.ctx(), binding), substitute(p.parts()[0], binding));
  }
  return p;
}

std::pair<Term, Term> gen_endpoints(const Shape& node, PushKind kind, const std::vector<Term>& args) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw Error(Errc::SortMismatch, std::string(to_string(kind)) + " at " + node.str() + ": " + what);
  };
  const bool smash_kind = kind == PushKind::L || kind == PushKind::R;
  need(node.kind() == (smash_kind ? Shape::Kind::Smash : Shape::Kind::Triple), "wrong node kind");
  need(args.size() == (smash_kind ? 1u : 2u), "wrong number of arguments");
  const Term base = Term::basepoint(node);
  auto star = [&](std::size_t i) { return Term::basepoint(node.child(i)); };
  auto arg = [&](std::size_t k, std::size_t slot) {
    need(args[k].shape() == node.child(slot), "argument " + args[k].str() + " has the wrong sort");
    return args[k];
  };
  switch (kind) {
    case PushKind::L: return {Term::pair(arg(0, 0), star(1)), base};
    case PushKind::R: return {Term::pair(star(0), arg(0, 1)), base};
    case PushKind::P0: return {Term::triple(star(0), arg(0, 1), arg(1, 2)), base};
    case PushKind::P1: return {Term::triple(arg(0, 0), star(1), arg(1, 2)), base};
    case PushKind::P2: return {Term::triple(arg(0, 0), arg(1, 1), star(2)), base};
  }
  return {base, base};
}

std::pair<Term, Term> endpoints(const PathExpr& p) {
  switch (p.kind()) {
    case PathExpr::Kind::Refl: {
      Term t = eval(p.term());
      return {t, t};
    }
    case PathExpr::Kind::Gen: {
      auto [s, t] = gen_endpoints(p.node(), p.push_kind(), p.args());
      return {eval(s), t};
    }
    case PathExpr::Kind::Pointedness:
      return {apply_map(p.map(), Term::basepoint(p.map()->domain())), Term::basepoint(p.map()->codomain())};
    case PathExpr::Kind::TwoCell:
      throw Error(Errc::TwoCellEncountered, p.name() + " is a 2-cell, not a 1-path");
    case PathExpr::Kind::Inv: {
      auto [s, t] = endpoints(p.parts()[0]);
      return {t, s};
    }
    case PathExpr::Kind::Comp: {
      auto [s, t] = endpoints(p.parts()[0]);
      for (std::size_t i = 1; i < p.parts().size(); ++i) {
        auto [s2, t2] = endpoints(p.parts()[i]);
        if (s2 != t)
          throw Error(Errc::IllChained, "link " + std::to_string(i) + " of " + p.str() + ": " + t.str() +
                                            " vs " + s2.str());
        t = t2;
      }
      return {s, t};
    }
    case PathExpr::Kind::Ap: {
      auto [s, t] = endpoints(p.parts()[0]);
      return {apply_map(p.map(), s), apply_map(p.map(), t)};
    }
    case PathExpr::Kind::ApCtx: {
      auto [s, t] = endpoints(p.parts()[0]);
      return {eval(plug(p.ctx(), s)), eval(plug(p.ctx(), t))};
    }
  }
  throw Error(Errc::IllFormed, "unknown path kind");
}

void check_corners(const Square& s) {
  auto [a, b] = endpoints(s.top);
  auto [c, d] = endpoints(s.bottom);
  auto [la, lc] = endpoints(s.left);
  auto [rb, rd] = endpoints(s.right);
  auto need = [](const Term& x, const Term& y, const char* corner) {
    if (x != y) throw Error(Errc::IllChained, std::string("square corner ") + corner + ": " + x.str() + " vs " + y.str());
  };
  need(a, la, "top-left");
  need(b, rb, "top-right");
  need(c, lc, "bottom-left");
  need(d, rd, "bottom-right");
}

// ---------------------------------------------------------------------------
// Generator families

std::string GeneratorFamily::str() const {
  std::string s = std::string(to_string(kind)) + "@" + node.str();
  if (!ctx.is(Term::Kind::Hole)) s += " in " + ctx.str();
  return s;
}

PathExpr GeneratorFamily::instance() const {
  std::vector<Term> args;
  if (kind == PushKind::L) args = {generic_var(node.child(0))};
  else if (kind == PushKind::R) args = {generic_var(node.child(1))};
  else if (kind == PushKind::P0) args = {generic_var(node.child(1)), generic_var(node.child(2))};
  else if (kind == PushKind::P1) args = {generic_var(node.child(0)), generic_var(node.child(2))};
  else args = {generic_var(node.child(0)), generic_var(node.child(1))};
  return PathExpr::ap_ctx(ctx, PathExpr::gen(node, kind, std::move(args)));
}

std::vector<GeneratorFamily> shape_generators(const Shape& s) {
  std::vector<GeneratorFamily> out;
  std::function<void(const Shape&, std::vector<int>, const Term&)> go = [&](const Shape& node, std::vector<int> path,
                                                                            const Term& ctx) {
    if (node.is_leaf()) return;
    if (node.kind() == Shape::Kind::Smash) {
      out.push_back({path, PushKind::L, node, ctx});
      out.push_back({path, PushKind::R, node, ctx});
    } else {
      out.push_back({path, PushKind::P0, node, ctx});
      out.push_back({path, PushKind::P1, node, ctx});
      out.push_back({path, PushKind::P2, node, ctx});
    }
    for (std::size_t i = 0; i < node.arity(); ++i) {
      std::vector<Term> kids;
      for (std::size_t j = 0; j < node.arity(); ++j)
        kids.push_back(j == i ? Term::hole(node.child(j)) : generic_var(node.child(j)));
      Term frame = node.arity() == 2 ? Term::pair(kids[0], kids[1]) : Term::triple(kids[0], kids[1], kids[2]);
      auto sub = path;
      sub.push_back(static_cast<int>(i));
      go(node.child(i), std::move(sub), plug(ctx, frame));
    }
  };
  go(s, {}, Term::hole(s));
  return out;
}

// ---------------------------------------------------------------------------
// Maps

bool match_clause(const PathClause& c, const Term& ctx, const PathExpr& gen, Binding& b) {
  if (!gen.is(PathExpr::Kind::Gen) || gen.push_kind() != c.kind || gen.node() != c.node) return false;
  if (!match(c.ctx, ctx, b)) return false;
  for (std::size_t i = 0; i < c.args.size(); ++i)
    if (!match(c.args[i], gen.args()[i], b)) return false;
  return true;
}

PathExpr PathClause::lhs() const { return PathExpr::ap_ctx(ctx, PathExpr::gen(node, kind, args)); }

bool MapDef::pointed_by_refl() const {
  switch (kind_) {
    case Kind::Table: return pointedness_.is(PathExpr::Kind::Refl);
    case Kind::Abstract: return strict_;
    case Kind::Composite:
      return std::all_of(stages_.begin(), stages_.end(), [](const MapRef& m) { return m->pointed_by_refl(); });
  }
  return false;
}

MapRef MapDef::table(std::string name, Shape domain, Shape codomain, std::vector<PointClause> points,
                     std::vector<PathClause> paths, std::optional<PathExpr> pointedness,
                     std::vector<TwoCellRow> two_cells) {
  auto m = std::shared_ptr<MapDef>(new MapDef());
  m->kind_ = Kind::Table;
  m->name_ = std::move(name);
  m->domain_ = std::move(domain);
  m->codomain_ = std::move(codomain);
  m->points_ = std::move(points);
  m->paths_ = std::move(paths);
  m->two_cells_ = std::move(two_cells);
  m->pointedness_ = pointedness ? *pointedness : PathExpr::refl(Term::basepoint(m->codomain_));
  validate(*m);
  return m;
}

MapRef MapDef::composite(std::vector<MapRef> stages, std::string name) {
  if (stages.empty()) throw Error(Errc::IllFormed, "empty composite");
  for (std::size_t i = 1; i < stages.size(); ++i)
    if (stages[i]->domain() != stages[i - 1]->codomain())
      throw Error(Errc::IllFormed, "composite does not chain: " + stages[i - 1]->name() + " : ... -> " +
                                       stages[i - 1]->codomain().str() + " then " + stages[i]->name() + " : " +
                                       stages[i]->domain().str() + " -> ...");
  auto m = std::shared_ptr<MapDef>(new MapDef());
  m->kind_ = Kind::Composite;
  if (name.empty()) {
    name = "(";
    for (std::size_t i = stages.size(); i-- > 0;) name += stages[i]->name() + (i ? " o " : "");
    name += ")";
  }
  m->name_ = std::move(name);
  m->domain_ = stages.front()->domain();
  m->codomain_ = stages.back()->codomain();
  m->stages_ = std::move(stages);
  return m;
}

MapRef MapDef::abstract(std::string symbol, Shape domain, Shape codomain, bool strict) {
  auto m = std::shared_ptr<MapDef>(new MapDef());
  m->kind_ = Kind::Abstract;
  m->name_ = std::move(symbol);
  m->domain_ = std::move(domain);
  m->codomain_ = std::move(codomain);
  m->strict_ = strict;
  return m;
}

MapRef compose(const MapRef& g, const MapRef& f) { return MapDef::composite({f, g}); }

namespace {

Term apply_evaluated(const MapRef& m, const Term& x) {
  if (x.shape() != m->domain())
    throw Error(Errc::SortMismatch, m->name() + " expects " + m->domain().str() + ", got " + x.str());
  switch (m->kind()) {
    case MapDef::Kind::Table:
      for (const auto& c : m->point_clauses()) {
        Binding b;
        if (match(c.pattern, x, b)) return eval(substitute(c.value, b));
      }
      if (x.is_ground()) throw Error(Errc::UnknownClause, m->name() + " has no point clause for " + x.str());
      return Term::app(m, x);
    case MapDef::Kind::Composite: {
      Term y = x;
      for (const auto& s : m->stages()) y = apply_evaluated(s, y);
      return y;
    }
    case MapDef::Kind::Abstract:
      if (m->strict() && x.is(Term::Kind::Basepoint)) return Term::basepoint(m->codomain());
      return Term::app(m, x);
  }
  return Term::app(m, x);
}

}  // namespace

Term eval(const Term& t) {
  if (t.is_ground() || (t.arity() == 0)) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) kids.push_back(eval(t.child(i)));
  if (t.is(Term::Kind::App)) return apply_evaluated(t.map(), kids[0]);
  return rebuild(t, std::move(kids));
}

Term apply_map(const MapRef& map, const Term& arg) { return apply_evaluated(map, eval(arg)); }

// ---------------------------------------------------------------------------
// Validation

namespace {

// Point-constructor instances needed to cover `patterns` at a position of
// shape `s`. Positions where every pattern is a variable stay generic.
std::vector<Term> point_instances(const Shape& s, const std::vector<Term>& patterns) {
  const bool split = std::any_of(patterns.begin(), patterns.end(), [](const Term& p) { return !p.is(Term::Kind::Var); });
  if (!split) return {generic_var(s)};
  std::vector<Term> out{Term::basepoint(s)};
  if (s.is_leaf()) {
    if (!s.is_unit()) throw Error(Errc::IllFormed, "patterns split the abstract leaf " + s.name());
    out.push_back(Term::unit_point());
    return out;
  }
  std::vector<std::vector<Term>> per_child(s.arity());
  for (std::size_t i = 0; i < s.arity(); ++i) {
    std::vector<Term> sub;
    for (const auto& p : patterns)
      if (p.is(Term::Kind::Pair) || p.is(Term::Kind::TriplePt)) sub.push_back(p.child(i));
    per_child[i] = point_instances(s.child(i), sub);
  }
  if (s.arity() == 2) {
    for (const auto& l : per_child[0])
      for (const auto& r : per_child[1]) out.push_back(Term::pair(l, r));
  } else {
    for (const auto& a : per_child[0])
      for (const auto& b : per_child[1])
        for (const auto& c : per_child[2]) out.push_back(Term::triple(a, b, c));
  }
  return out;
}

std::vector<Term> subpatterns(const std::vector<Term>& patterns, std::size_t i) {
  std::vector<Term> sub;
  for (const auto& p : patterns)
    if (p.is(Term::Kind::Pair) || p.is(Term::Kind::TriplePt)) sub.push_back(p.child(i));
  return sub;
}

bool is_split(const std::vector<Term>& patterns) {
  return std::any_of(patterns.begin(), patterns.end(), [](const Term& p) { return !p.is(Term::Kind::Var); });
}

// Letters of every generator family living at split positions, with split
// arguments expanded into their point constructors.
void family_instances(const Shape& s, const std::vector<Term>& patterns, const Term& ctx,
                      std::vector<PathExpr>& out) {
  if (s.is_leaf() || !is_split(patterns)) return;
  std::vector<std::vector<Term>> kid_inst(s.arity());
  for (std::size_t i = 0; i < s.arity(); ++i) kid_inst[i] = point_instances(s.child(i), subpatterns(patterns, i));
  auto emit = [&](PushKind k, std::vector<std::size_t> slots) {
    std::vector<std::vector<Term>> choices;
    for (auto slot : slots) choices.push_back(kid_inst[slot]);
    std::vector<Term> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == choices.size()) {
        out.push_back(PathExpr::ap_ctx(ctx, PathExpr::gen(s, k, cur)));
        return;
      }
      for (const auto& t : choices[i]) {
        cur.push_back(t);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
  };
  if (s.kind() == Shape::Kind::Smash) {
    emit(PushKind::L, {0});
    emit(PushKind::R, {1});
  } else {
    emit(PushKind::P0, {1, 2});
    emit(PushKind::P1, {0, 2});
    emit(PushKind::P2, {0, 1});
  }
  for (std::size_t i = 0; i < s.arity(); ++i) {
    // Every combination of sibling constructors gives a distinct context.
    std::vector<std::vector<Term>> sib(s.arity());
    for (std::size_t j = 0; j < s.arity(); ++j)
      sib[j] = j == i ? std::vector<Term>{Term::hole(s.child(j))} : kid_inst[j];
    std::vector<Term> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == s.arity()) {
        Term frame = s.arity() == 2 ? Term::pair(cur[0], cur[1]) : Term::triple(cur[0], cur[1], cur[2]);
        family_instances(s.child(i), subpatterns(patterns, i), plug(ctx, frame), out);
        return;
      }
      for (const auto& t : sib[j]) {
        cur.push_back(t);
        rec(j + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
}

bool clause_matches(const PathClause& c, const PathExpr& letter) {
  Term ctx = letter.is(PathExpr::Kind::ApCtx) ? letter.ctx() : Term::hole(letter.node());
  const PathExpr& gen = letter.is(PathExpr::Kind::ApCtx) ? letter.parts()[0] : letter;
  Binding b;
  return match_clause(c, ctx, gen, b);
}

}  // namespace

void validate(const MapDef& m) {
  if (m.kind() != MapDef::Kind::Table) return;
  const std::string who = "map " + m.name() + ": ";
  if (!m.domain().well_formed()) throw Error(Errc::IllFormed, who + "domain has repeated leaves");
  std::vector<Term> patterns;
  for (const auto& c : m.point_clauses()) {
    if (c.pattern.shape() != m.domain())
      throw Error(Errc::IllFormed, who + "pattern " + c.pattern.str() + " is not a point of " + m.domain().str());
    if (c.value.shape() != m.codomain())
      throw Error(Errc::IllFormed, who + "value " + c.value.str() + " is not a point of " + m.codomain().str());
    patterns.push_back(c.pattern);
  }
  for (const auto& inst : point_instances(m.domain(), patterns)) {
    bool hit = std::any_of(m.point_clauses().begin(), m.point_clauses().end(), [&](const PointClause& c) {
      Binding b;
      return match(c.pattern, inst, b);
    });
    if (!hit) throw Error(Errc::IllFormed, who + "no point clause covers " + inst.str());
  }
  // The map must be callable while validating its own path clauses.
  MapRef self(std::shared_ptr<const MapDef>{}, &m);
  std::vector<PathExpr> needed;
  family_instances(m.domain(), patterns, Term::hole(m.domain()), needed);
  for (const auto& letter : needed) {
    bool hit = std::any_of(m.path_clauses().begin(), m.path_clauses().end(),
                           [&](const PathClause& c) { return clause_matches(c, letter); });
    if (!hit) throw Error(Errc::IllFormed, who + "no path clause covers " + letter.str());
  }
  for (const auto& c : m.path_clauses()) {
    auto [s, t] = endpoints(c.lhs());
    auto [vs, vt] = endpoints(c.value);
    Term fs = apply_map(self, s), ft = apply_map(self, t);
    if (fs != vs || ft != vt)
      throw Error(Errc::IllFormed, who + "clause for " + c.lhs().str() + " must run " + fs.str() + " -> " + ft.str() +
                                       " but " + c.value.str() + " runs " + vs.str() + " -> " + vt.str());
  }
  auto [ps, pt] = endpoints(m.pointedness_path());
  Term fb = apply_map(self, Term::basepoint(m.domain()));
  if (ps != fb || pt != Term::basepoint(m.codomain()))
    throw Error(Errc::IllFormed, who + "pointedness " + m.pointedness_path().str() + " runs " + ps.str() + " -> " +
                                     pt.str() + ", expected " + fb.str() + " -> " + Term::basepoint(m.codomain()).str());
}

}  // namespace smashkit
