#include "smashkit/json_io.hpp"

#include <cctype>

namespace smashkit {

using nlohmann::json;

json to_json(const Shape& s) {
  switch (s.kind()) {
    case Shape::Kind::Leaf:
      if (s.is_unit()) return {{"kind", "unit"}};
      return {{"kind", "leaf"}, {"name", s.name()}};
    case Shape::Kind::Smash: return {{"kind", "smash"}, {"left", to_json(s.child(0))}, {"right", to_json(s.child(1))}};
    case Shape::Kind::Triple:
      return {{"kind", "triple"}, {"parts", {to_json(s.child(0)), to_json(s.child(1)), to_json(s.child(2))}}};
  }
  return nullptr;
}

json to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Basepoint: return {{"kind", "basepoint"}, {"shape", t.shape().str()}};
    case Term::Kind::UnitPoint: return {{"kind", "unit_point"}};
    case Term::Kind::Pair: return {{"kind", "pair"}, {"left", to_json(t.child(0))}, {"right", to_json(t.child(1))}};
    case Term::Kind::TriplePt:
      return {{"kind", "triple"}, {"parts", {to_json(t.child(0)), to_json(t.child(1)), to_json(t.child(2))}}};
    case Term::Kind::Var: return {{"kind", "var"}, {"name", t.var_name()}, {"sort", t.shape().str()}};
    case Term::Kind::App: return {{"kind", "app"}, {"map", t.map()->name()}, {"arg", to_json(t.child(0))}};
    case Term::Kind::Hole: return {{"kind", "hole"}, {"shape", t.shape().str()}};
  }
  return nullptr;
}

json to_json(const PathExpr& p) {
  switch (p.kind()) {
    case PathExpr::Kind::Refl: return {{"kind", "refl"}, {"at", to_json(p.term())}};
    case PathExpr::Kind::Gen: {
      json args = json::array();
      for (const auto& a : p.args()) args.push_back(to_json(a));
      return {{"kind", "gen"}, {"node", p.node().str()}, {"push", to_string(p.push_kind())}, {"args", args}};
    }
    case PathExpr::Kind::Pointedness: return {{"kind", "pointedness"}, {"map", p.map()->name()}};
    case PathExpr::Kind::TwoCell: return {{"kind", "two_cell"}, {"name", p.name()}};
    case PathExpr::Kind::Inv: return {{"kind", "inv"}, {"path", to_json(p.parts()[0])}};
    case PathExpr::Kind::Comp: {
      json parts = json::array();
      for (const auto& q : p.parts()) parts.push_back(to_json(q));
      return {{"kind", "comp"}, {"parts", parts}};
    }
    case PathExpr::Kind::Ap: return {{"kind", "ap"}, {"map", p.map()->name()}, {"path", to_json(p.parts()[0])}};
    case PathExpr::Kind::ApCtx: return {{"kind", "ap_ctx"}, {"ctx", to_json(p.ctx())}, {"path", to_json(p.parts()[0])}};
  }
  return nullptr;
}

json to_json(const MapDef& m) {
  json j{{"name", m.name()}, {"domain", m.domain().str()}, {"codomain", m.codomain().str()}};
  switch (m.kind()) {
    case MapDef::Kind::Table: {
      j["kind"] = "table";
      json points = json::array(), paths = json::array(), cells = json::array();
      for (const auto& c : m.point_clauses()) points.push_back({{"pattern", to_json(c.pattern)}, {"value", to_json(c.value)}});
      for (const auto& c : m.path_clauses()) paths.push_back({{"lhs", to_json(c.lhs())}, {"value", to_json(c.value)}});
      for (const auto& c : m.two_cell_rows()) cells.push_back({{"lhs", c.lhs}, {"rhs", c.rhs}});
      j["points"] = points;
      j["paths"] = paths;
      j["pointedness"] = to_json(m.pointedness_path());
      if (!cells.empty()) j["two_cells"] = cells;
      break;
    }
    case MapDef::Kind::Composite: {
      j["kind"] = "composite";
      json stages = json::array();
      for (const auto& s : m.stages()) stages.push_back(to_json(*s));
      j["stages"] = stages;
      break;
    }
    case MapDef::Kind::Abstract:
      j["kind"] = "abstract";
      j["strict"] = m.strict();
      break;
  }
  return j;
}

json to_json(const NormalWord& w) {
  json letters = json::array();
  for (const auto& l : w.letters) letters.push_back({{"letter", l.letter.str()}, {"sign", l.inverse ? -1 : 1}});
  return {{"source", w.source.str()}, {"target", w.target.str()}, {"letters", letters}};
}

json to_json(const Square& s) {
  return {{"top", to_json(s.top)}, {"bottom", to_json(s.bottom)}, {"left", to_json(s.left)}, {"right", to_json(s.right)}};
}

json to_json(const Obligation& o) {
  json j{{"tag", o.tag}, {"vars", o.vars}};
  if (o.error.empty()) j["square"] = to_json(o.square);
  else j["error"] = o.error;
  return j;
}

json to_json(const ObligationReport& r) {
  json j{{"tag", r.tag}, {"vars", r.vars}, {"fillable", r.fillable}};
  if (r.error.empty()) {
    j["lhs_word"] = to_json(r.lhs_word);
    j["rhs_word"] = to_json(r.rhs_word);
  } else {
    j["lhs_word"] = nullptr;
    j["rhs_word"] = nullptr;
    j["error"] = r.error;
  }
  return j;
}

json to_json(const DischargeReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"ok", r.ok()}, {"obligations", entries}};
}

namespace {

class ShapeParser {
 public:
  explicit ShapeParser(const std::string& s) : s_(s) {}

  Shape parse() {
    Shape out = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::IllFormed, "shape '" + s_ + "' at " + std::to_string(i_) + ": " + what);
  }
  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  Shape expr() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Shape l = expr();
      expect('^');
      Shape r = expr();
      expect(')');
      return Shape::smash(l, r);
    }
    if (c == '[') {
      ++i_;
      Shape a = expr();
      expect(',');
      Shape b = expr();
      expect(',');
      Shape d = expr();
      expect(']');
      return Shape::triple(a, b, d);
    }
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
      ++i_;
    if (start == i_) fail("expected a leaf name");
    std::string name = s_.substr(start, i_ - start);
    return name == "I" ? Shape::unit() : Shape::leaf(name);
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Shape parse_shape(const std::string& text) { return ShapeParser(text).parse(); }

}  // namespace smashkit
