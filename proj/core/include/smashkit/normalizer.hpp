#pragma once

// Free-groupoid normal forms of 1-paths. A path is flattened into a word of
// generator letters, each a push constructor (or the pointedness path of an
// abstract map) wrapped in an evaluated one-hole context, and then freely
// reduced. Two squares' boundaries are compared on these words.

#include <string>
#include <utility>
#include <vector>

#include "smashkit/term.hpp"

namespace smashkit {

struct Letter {
  Term ctx;       // evaluated context; Hole when the letter is bare
  PathExpr core;  // Gen, or Pointedness of a non-strict abstract map

  std::string key() const { return ctx.key() + "|" + core.key(); }
  std::string str() const;
  PathExpr expr() const { return ctx.is(Term::Kind::Hole) ? core : PathExpr::ap_ctx(ctx, core); }
  std::pair<Term, Term> endpoints() const;
};

struct SignedLetter {
  Letter letter;
  bool inverse = false;
};

struct NormalWord {
  Term source;
  Term target;
  std::vector<SignedLetter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  std::string str() const;
  // Equal letters, signs and endpoints.
  friend bool operator==(const NormalWord& a, const NormalWord& b);
  friend bool operator!=(const NormalWord& a, const NormalWord& b) { return !(a == b); }
};

NormalWord normalize(const PathExpr& p);
// Back to a path: Comp of letters (Inv for negative ones), Refl when empty.
PathExpr embed(const NormalWord& w);

// ap of a map or of a one-hole context, with every clause unfolded.
PathExpr ap_eval(const MapRef& f, const PathExpr& p);
PathExpr ap_eval(const Term& ctx, const PathExpr& p);

struct FillCheck {
  bool fillable = false;
  NormalWord lhs;  // left^-1 . top . right
  NormalWord rhs;  // bottom
};

// Throws IllChained if the corners disagree.
FillCheck check_fill(const Square& s);
bool refl_fillable(const Square& s);

}  // namespace smashkit
