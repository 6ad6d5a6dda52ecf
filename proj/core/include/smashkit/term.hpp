#pragma once

// Syntax of the smash-product calculus: shapes, points, one-hole contexts,
// formal 1-paths and clause-table maps. Every value here is immutable once
// built and cheap to copy (shared, structurally compared).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smashkit {

enum class Errc {
  IllChained,
  UnknownClause,
  SortMismatch,
  TwoCellEncountered,
  IllFormed,
  NonConstructorInput,
  UnknownDiagram,
  ObligationFailed,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// ---------------------------------------------------------------------------
// Shape

class Shape {
 public:
  enum class Kind : std::uint8_t { Leaf, Smash, Triple };

  Shape();  // the leaf "A"
  static Shape leaf(std::string name);
  // The two-point unit {*, o}. Printed and sorted as the leaf "I".
  static Shape unit();
  static Shape smash(Shape left, Shape right);
  static Shape triple(Shape a, Shape b, Shape c);

  Kind kind() const;
  bool is_leaf() const { return kind() == Kind::Leaf; }
  bool is_unit() const;
  const std::string& name() const;  // leaf name; empty otherwise
  std::size_t arity() const;
  const Shape& child(std::size_t i) const;

  // Canonical text: A, (A^B), [A,B,C].
  const std::string& str() const;
  std::vector<std::string> leaf_names() const;
  bool well_formed() const;

  friend bool operator==(const Shape& a, const Shape& b);
  friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }
  friend bool operator<(const Shape& a, const Shape& b) { return a.str() < b.str(); }

 private:
  struct Node;
  explicit Shape(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Term

class MapDef;
using MapRef = std::shared_ptr<const MapDef>;

class Term {
 public:
  enum class Kind : std::uint8_t { Basepoint, UnitPoint, Pair, TriplePt, Var, App, Hole };

  Term();  // basepoint of the default shape
  static Term basepoint(const Shape& at);
  static Term unit_point();  // the non-base element o of I
  static Term pair(Term l, Term r);
  static Term triple(Term a, Term b, Term c);
  static Term var(std::string name, Shape sort);
  static Term app(MapRef map, Term arg);
  static Term hole(Shape expected);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const Shape& shape() const;
  const std::string& var_name() const;
  const MapRef& map() const;
  std::size_t arity() const;
  const Term& child(std::size_t i) const;

  bool has_hole() const;
  bool is_ground() const;  // no Var, App or Hole anywhere

  // Structural key: equal keys iff equal terms.
  const std::string& key() const;
  // Human-readable rendering.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Binding = std::map<std::string, Term>;

// Simultaneous, capture-free substitution of variables by name.
// Throws SortMismatch if a replacement's shape differs from the variable sort.
Term substitute(const Term& t, const Binding& binding);
// Replaces the unique Hole of `ctx` by `t`.
Term plug(const Term& ctx, const Term& t);
// Conventional generic variable for a sort: lowercase leaf names, I -> i.
Term generic_var(const Shape& sort);
// The point whose leaves are all basepoints: <<*A,*B>,*C> etc.
Term all_basepoints(const Shape& s);
// Generic point with one variable per leaf.
Term generic_point(const Shape& s);

// Structural first-order matching. Pattern variables bind whole subterms;
// a Hole in the pattern matches only a Hole of the same shape.
bool match(const Term& pattern, const Term& t, Binding& binding);

// ---------------------------------------------------------------------------
// Path expressions

enum class PushKind : std::uint8_t { L, R, P0, P1, P2 };
const char* to_string(PushKind k);

class PathExpr {
 public:
  enum class Kind : std::uint8_t { Refl, Gen, Pointedness, TwoCell, Inv, Comp, Ap, ApCtx };

  PathExpr();  // refl at the default basepoint
  static PathExpr refl(Term at);
  // A push constructor of the smash/triple node `node`; args per constructor:
  // L(a), R(b) for smash; P0(b,c), P1(a,c), P2(a,b) for triple.
  static PathExpr gen(Shape node, PushKind kind, std::vector<Term> args);
  static PathExpr push_l(const Shape& node, Term a) { return gen(node, PushKind::L, {std::move(a)}); }
  static PathExpr push_r(const Shape& node, Term b) { return gen(node, PushKind::R, {std::move(b)}); }
  static PathExpr pointedness(MapRef map);
  static PathExpr two_cell(std::string name);
  static PathExpr inv(PathExpr p);
  static PathExpr comp(std::vector<PathExpr> parts);
  static PathExpr ap(MapRef map, PathExpr p);
  static PathExpr ap_ctx(Term ctx, PathExpr p);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const Term& term() const;  // Refl point
  const Shape& node() const;  // Gen node
  PushKind push_kind() const;
  const std::vector<Term>& args() const;
  const MapRef& map() const;
  const std::string& name() const;  // TwoCell
  const Term& ctx() const;
  const std::vector<PathExpr>& parts() const;  // Comp parts, or the single operand

  const std::string& key() const;
  std::string str() const;

  friend bool operator==(const PathExpr& a, const PathExpr& b);
  friend bool operator!=(const PathExpr& a, const PathExpr& b) { return !(a == b); }

 private:
  struct Node;
  explicit PathExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

PathExpr substitute(const PathExpr& p, const Binding& binding);
// Endpoint terms (evaluated). Throws IllChained / UnknownClause / TwoCellEncountered.
std::pair<Term, Term> endpoints(const PathExpr& p);
// Endpoints of a push constructor, unevaluated.
std::pair<Term, Term> gen_endpoints(const Shape& node, PushKind kind, const std::vector<Term>& args);

// ---------------------------------------------------------------------------
// Generator families

struct GeneratorFamily {
  std::vector<int> node_path;  // child indices from the root
  PushKind kind;
  Shape node;
  Term ctx;  // pair/triple brackets from the root down to the node, with a Hole
  std::string str() const;
  // The family instantiated at generic variables (ctx siblings and args).
  PathExpr instance() const;
};

std::vector<GeneratorFamily> shape_generators(const Shape& s);

// ---------------------------------------------------------------------------
// Maps

struct PointClause {
  Term pattern;
  Term value;
};

// Left side of a path clause: ApCtx(ctx, Gen(node, kind, args)) with pattern
// variables in ctx siblings and args.
struct PathClause {
  Term ctx;
  Shape node;
  PushKind kind;
  std::vector<Term> args;
  PathExpr value;
  PathExpr lhs() const;
};

// Matches a path clause against a generator `gen` sitting in context `ctx`.
bool match_clause(const PathClause& clause, const Term& ctx, const PathExpr& gen, Binding& binding);

// 2-cell rows are kept for reference only; evaluation never consults them.
struct TwoCellRow {
  std::string lhs;
  std::string rhs;
};

class MapDef {
 public:
  enum class Kind : std::uint8_t { Table, Composite, Abstract };

  // Validates the clause table (totality and endpoint checks) and throws
  // IllFormed on failure.
  static MapRef table(std::string name, Shape domain, Shape codomain, std::vector<PointClause> points,
                      std::vector<PathClause> paths, std::optional<PathExpr> pointedness = std::nullopt,
                      std::vector<TwoCellRow> two_cells = {});
  // Applied first to last.
  static MapRef composite(std::vector<MapRef> stages, std::string name = {});
  // `strict` maps send the basepoint to the basepoint definitionally and are
  // pointed by refl.
  static MapRef abstract(std::string symbol, Shape domain, Shape codomain, bool strict = true);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Shape& domain() const { return domain_; }
  const Shape& codomain() const { return codomain_; }
  const std::vector<PointClause>& point_clauses() const { return points_; }
  const std::vector<PathClause>& path_clauses() const { return paths_; }
  const std::vector<TwoCellRow>& two_cell_rows() const { return two_cells_; }
  const PathExpr& pointedness_path() const { return pointedness_; }
  const std::vector<MapRef>& stages() const { return stages_; }
  bool strict() const { return strict_; }
  bool pointed_by_refl() const;

 private:
  MapDef() = default;
  Kind kind_ = Kind::Table;
  std::string name_;
  Shape domain_;
  Shape codomain_;
  std::vector<PointClause> points_;
  std::vector<PathClause> paths_;
  std::vector<TwoCellRow> two_cells_;
  PathExpr pointedness_;
  std::vector<MapRef> stages_;
  bool strict_ = true;
};

// g after f.
MapRef compose(const MapRef& g, const MapRef& f);

// Point-level evaluation: reduces App nodes whose argument matches a point
// clause; leaves generic applications stuck.
Term eval(const Term& t);
Term apply_map(const MapRef& map, const Term& arg);

// Clause-table checks run by MapDef::table; exposed for tests.
void validate(const MapDef& map);

// ---------------------------------------------------------------------------

// Square with corners  a --top--> b,  c --bottom--> d,  a --left--> c,
// b --right--> d.  It is refl-fillable when left^-1 . top . right and bottom
// reduce to the same word.
struct Square {
  PathExpr top;
  PathExpr bottom;
  PathExpr left;
  PathExpr right;
};

// Throws IllChained naming the first corner that disagrees.
void check_corners(const Square& s);

}  // namespace smashkit
