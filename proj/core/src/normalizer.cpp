#include "smashkit/normalizer.hpp"

namespace smashkit {

namespace {

using Word = std::vector<SignedLetter>;

void push(Word& w, SignedLetter l) {
  if (!w.empty() && w.back().inverse != l.inverse && w.back().letter.key() == l.letter.key()) {
    w.pop_back();
    return;
  }
  w.push_back(std::move(l));
}

void append(Word& w, const Word& tail, bool inverted) {
  if (!inverted) {
    for (const auto& l : tail) push(w, l);
    return;
  }
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) push(w, {it->letter, !it->inverse});
}

// Terms built only from constructors and leaf-sorted variables: a table
// that is total must have a clause for every generator over them.
bool constructor_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::App: return false;
    case Term::Kind::Var: return t.shape().is_leaf();
    default:
      for (std::size_t i = 0; i < t.arity(); ++i)
        if (!constructor_term(t.child(i))) return false;
      return true;
  }
}

Word collect(const PathExpr& p);
Word canon(const Term& ctx, const PathExpr& core);

Word ap_letter(const MapRef& m, const Letter& l) {
  switch (m->kind()) {
    case MapDef::Kind::Abstract: return {{{Term::app(m, l.ctx), l.core}, false}};
    case MapDef::Kind::Composite: {
      Word w{{l, false}};
      for (const auto& stage : m->stages()) {
        Word next;
        for (const auto& sl : w) append(next, ap_letter(stage, sl.letter), sl.inverse);
        w = std::move(next);
      }
      return w;
    }
    case MapDef::Kind::Table: break;
  }
  // The hole sits under a pattern variable: the map acts on it pointwise.
  for (const auto& c : m->point_clauses()) {
    Binding b;
    if (!match(c.pattern, l.ctx, b)) continue;
    Term next = substitute(c.value, b);
    if (!next.has_hole()) return {};
    return canon(next, l.core);
  }
  if (l.core.is(PathExpr::Kind::Gen)) {
    for (const auto& c : m->path_clauses()) {
      Binding b;
      if (match_clause(c, l.ctx, l.core, b)) return collect(substitute(c.value, b));
    }
    bool concrete = constructor_term(l.ctx);
    for (const auto& a : l.core.args()) concrete = concrete && constructor_term(a);
    if (concrete) throw Error(Errc::UnknownClause, m->name() + " has no path clause for " + l.str());
  }
  return {{{Term::app(m, l.ctx), l.core}, false}};
}

Word canon(const Term& ctx, const PathExpr& core) {
  switch (ctx.kind()) {
    case Term::Kind::Hole: return {{{ctx, core}, false}};
    case Term::Kind::Pair:
    case Term::Kind::TriplePt: {
      std::size_t at = 0;
      while (!ctx.child(at).has_hole()) ++at;
      Word inner = canon(ctx.child(at), core);
      std::vector<Term> kids;
      for (std::size_t i = 0; i < ctx.arity(); ++i) kids.push_back(i == at ? ctx.child(i) : eval(ctx.child(i)));
      Word out;
      for (auto& sl : inner) {
        kids[at] = sl.letter.ctx;
        Term wrapped = kids.size() == 2 ? Term::pair(kids[0], kids[1]) : Term::triple(kids[0], kids[1], kids[2]);
        out.push_back({{wrapped, sl.letter.core}, sl.inverse});
      }
      return out;
    }
    case Term::Kind::App: {
      Word out;
      for (const auto& sl : canon(ctx.child(0), core)) append(out, ap_letter(ctx.map(), sl.letter), sl.inverse);
      return out;
    }
    default: throw Error(Errc::IllFormed, "context without a hole: " + ctx.str());
  }
}

Word pointedness_word(const MapRef& m) {
  switch (m->kind()) {
    case MapDef::Kind::Table: return collect(m->pointedness_path());
    case MapDef::Kind::Abstract:
      if (m->strict()) return {};
      return {{{Term::hole(m->codomain()), PathExpr::pointedness(m)}, false}};
    case MapDef::Kind::Composite: {
      Word w;
      for (const auto& stage : m->stages()) {
        Word next;
        for (const auto& sl : w) append(next, ap_letter(stage, sl.letter), sl.inverse);
        append(next, pointedness_word(stage), false);
        w = std::move(next);
      }
      return w;
    }
  }
  return {};
}

Word collect(const PathExpr& p) {
  switch (p.kind()) {
    case PathExpr::Kind::Refl: return {};
    case PathExpr::Kind::Gen: {
      std::vector<Term> args;
      for (const auto& a : p.args()) args.push_back(eval(a));
      return {{{Term::hole(p.node()), PathExpr::gen(p.node(), p.push_kind(), std::move(args))}, false}};
    }
    case PathExpr::Kind::Pointedness: return pointedness_word(p.map());
    case PathExpr::Kind::TwoCell:
      throw Error(Errc::TwoCellEncountered, p.name() + " cannot be evaluated as a 1-path");
    case PathExpr::Kind::Inv: {
      Word w;
      append(w, collect(p.parts()[0]), true);
      return w;
    }
    case PathExpr::Kind::Comp: {
      Word w;
      for (const auto& q : p.parts()) append(w, collect(q), false);
      return w;
    }
    case PathExpr::Kind::Ap: {
      Word w;
      for (const auto& sl : collect(p.parts()[0])) append(w, ap_letter(p.map(), sl.letter), sl.inverse);
      return w;
    }
    case PathExpr::Kind::ApCtx: {
      Word w;
      for (const auto& sl : collect(p.parts()[0])) append(w, canon(plug(p.ctx(), sl.letter.ctx), sl.letter.core), sl.inverse);
      return w;
    }
  }
  return {};
}

}  // namespace

std::string Letter::str() const {
  if (ctx.is(Term::Kind::Hole)) return core.str();
  return "ap_{" + ctx.str() + "}(" + core.str() + ")";
}

std::pair<Term, Term> Letter::endpoints() const {
  auto [s, t] = smashkit::endpoints(core);
  return {eval(plug(ctx, s)), eval(plug(ctx, t))};
}

std::string NormalWord::str() const {
  if (letters.empty()) return "refl";
  std::string s;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += " . ";
    s += letters[i].letter.str();
    if (letters[i].inverse) s += "^-1";
  }
  return s;
}

bool operator==(const NormalWord& a, const NormalWord& b) {
  if (a.source != b.source || a.target != b.target || a.letters.size() != b.letters.size()) return false;
  for (std::size_t i = 0; i < a.letters.size(); ++i)
    if (a.letters[i].inverse != b.letters[i].inverse || a.letters[i].letter.key() != b.letters[i].letter.key())
      return false;
  return true;
}

NormalWord normalize(const PathExpr& p) {
  auto [s, t] = endpoints(p);
  return {s, t, collect(p)};
}

PathExpr embed(const NormalWord& w) {
  if (w.letters.empty()) return PathExpr::refl(w.source);
  std::vector<PathExpr> parts;
  for (const auto& sl : w.letters) parts.push_back(sl.inverse ? PathExpr::inv(sl.letter.expr()) : sl.letter.expr());
  return PathExpr::comp(std::move(parts));
}

PathExpr ap_eval(const MapRef& f, const PathExpr& p) { return embed(normalize(PathExpr::ap(f, p))); }

PathExpr ap_eval(const Term& ctx, const PathExpr& p) { return embed(normalize(PathExpr::ap_ctx(ctx, p))); }

FillCheck check_fill(const Square& s) {
  check_corners(s);
  FillCheck out;
  out.lhs = normalize(PathExpr::comp({PathExpr::inv(s.left), s.top, s.right}));
  out.rhs = normalize(s.bottom);
  out.fillable = out.lhs == out.rhs;
  return out;
}

bool refl_fillable(const Square& s) { return check_fill(s).fillable; }

}  // namespace smashkit
