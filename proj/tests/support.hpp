#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "smashkit/induction.hpp"

namespace smashkit::testing {

// Loops at the basepoint of `s`: push_l(*)^-1 . push_r(*) at every smash
// node, conjugated down to the root basepoint.
inline std::vector<PathExpr> basepoint_loops(const Shape& s) {
  std::vector<PathExpr> out;
  if (s.kind() != Shape::Kind::Smash) return out;
  const Shape &X = s.child(0), &Y = s.child(1);
  Term sx = Term::basepoint(X), sy = Term::basepoint(Y);
  out.push_back(PathExpr::comp({PathExpr::inv(PathExpr::push_l(s, sx)), PathExpr::push_r(s, sy)}));
  for (const auto& inner : basepoint_loops(X)) {
    PathExpr down = PathExpr::push_l(s, sx);  // <*X,*Y> -> *
    out.push_back(PathExpr::comp({PathExpr::inv(down), PathExpr::ap_ctx(Term::pair(Term::hole(X), sy), inner), down}));
  }
  for (const auto& inner : basepoint_loops(Y)) {
    PathExpr down = PathExpr::push_r(s, sy);
    out.push_back(PathExpr::comp({PathExpr::inv(down), PathExpr::ap_ctx(Term::pair(sx, Term::hole(Y)), inner), down}));
  }
  return out;
}

// A loop at `p` that does not reduce away, when one exists.
inline std::optional<PathExpr> loop_at(const Term& p) {
  const Shape& s = p.shape();
  if (s.kind() != Shape::Kind::Smash) return std::nullopt;
  if (p.is(Term::Kind::Basepoint)) return basepoint_loops(s).front();
  if (!p.is(Term::Kind::Pair)) return std::nullopt;
  const Term &u = p.child(0), &v = p.child(1);
  PathExpr z = basepoint_loops(s).front();
  if (v.is(Term::Kind::Basepoint)) {
    PathExpr down = PathExpr::push_l(s, u);
    return PathExpr::comp({down, z, PathExpr::inv(down)});
  }
  if (u.is(Term::Kind::Basepoint)) {
    PathExpr down = PathExpr::push_r(s, v);
    return PathExpr::comp({down, z, PathExpr::inv(down)});
  }
  if (auto l = loop_at(v)) return PathExpr::ap_ctx(Term::pair(u, Term::hole(v.shape())), *l);
  if (auto l = loop_at(u)) return PathExpr::ap_ctx(Term::pair(Term::hole(u.shape()), v), *l);
  return std::nullopt;
}

// Random product of basepoint loops, possibly empty.
inline PathExpr random_loop(const Shape& s, std::mt19937& rng, std::size_t max_len = 4) {
  auto gens = basepoint_loops(s);
  Term base = Term::basepoint(s);
  if (gens.empty()) return PathExpr::refl(base);
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, gens.size() - 1);
  std::vector<PathExpr> parts{PathExpr::refl(base)};
  for (std::size_t i = len(rng); i > 0; --i) {
    PathExpr g = gens[pick(rng)];
    parts.push_back(rng() % 2 ? g : PathExpr::inv(g));
  }
  return PathExpr::comp(parts);
}

// ---------------------------------------------------------------------------
// Random well-chained paths in ((A^B)^C)

// One push letter with concrete arguments.
struct Atom {
  PathExpr path;
  Term src, tgt;
  std::string key;  // key of its one-letter normal form
};

inline std::vector<Term> elems(const Shape& s, const char* prefix) {
  return {Term::basepoint(s), Term::var(std::string(prefix) + "1", s), Term::var(std::string(prefix) + "2", s)};
}

inline std::vector<Atom> atoms() {
  const Shape A = Shape::leaf("A"), B = Shape::leaf("B"), C = Shape::leaf("C");
  const Shape AB = Shape::smash(A, B), AB_C = Shape::smash(AB, C);
  std::vector<PathExpr> ps;
  auto as = elems(A, "a"), bs = elems(B, "b"), cs = elems(C, "c");
  for (const auto& c : cs) {
    Term ctx = Term::pair(Term::hole(AB), c);
    for (const auto& a : as) ps.push_back(PathExpr::ap_ctx(ctx, PathExpr::push_l(AB, a)));
    for (const auto& b : bs) ps.push_back(PathExpr::ap_ctx(ctx, PathExpr::push_r(AB, b)));
    ps.push_back(PathExpr::push_r(AB_C, c));
  }
  ps.push_back(PathExpr::push_l(AB_C, Term::basepoint(AB)));
  for (const auto& a : as)
    for (const auto& b : bs) ps.push_back(PathExpr::push_l(AB_C, Term::pair(a, b)));

  std::vector<Atom> out;
  for (const auto& p : ps) {
    auto [s, t] = endpoints(p);
    auto w = normalize(p);
    if (w.size() != 1) throw std::logic_error("atom " + p.str() + " is not a single letter");
    out.push_back({p, s, t, w.letters[0].letter.key()});
  }
  return out;
}

struct Step {
  std::size_t atom;
  bool inverse;
};

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed), atoms_(atoms()) {}

  const std::vector<Atom>& pool() const { return atoms_; }

  // A random walk of `len` letters starting at a random atom endpoint.
  std::vector<Step> walk(std::size_t len) {
    std::vector<Step> steps;
    const Atom& first = atoms_[pick(atoms_.size())];
    Term at = coin() ? first.src : first.tgt;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<Step> options;
      for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if (atoms_[k].src == at) options.push_back({k, false});
        if (atoms_[k].tgt == at) options.push_back({k, true});
      }
      Step s = options[pick(options.size())];
      steps.push_back(s);
      at = s.inverse ? atoms_[s.atom].src : atoms_[s.atom].tgt;
    }
    return steps;
  }

  Term start(const std::vector<Step>& w) const {
    const Atom& a = atoms_[w.front().atom];
    return w.front().inverse ? a.tgt : a.src;
  }

  // A random expression tree whose flattening is exactly `w`.
  PathExpr build(const std::vector<Step>& w, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
      PathExpr p = atoms_[w[lo].atom].path;
      if (w[lo].inverse) p = PathExpr::inv(p);
      switch (pick(4)) {
        case 0: return PathExpr::inv(PathExpr::inv(p));
        case 1: return PathExpr::comp({PathExpr::refl(endpoints(p).first), p});
        default: return p;
      }
    }
    if (pick(4) == 0) {
      // Inv of the reversed, sign-flipped segment.
      std::vector<Step> rev(w.rbegin() + static_cast<long>(w.size() - hi), w.rbegin() + static_cast<long>(w.size() - lo));
      for (auto& s : rev) s.inverse = !s.inverse;
      return PathExpr::inv(build(rev, 0, rev.size()));
    }
    std::size_t mid = lo + 1 + pick(hi - lo - 1);
    return PathExpr::comp({build(w, lo, mid), build(w, mid, hi)});
  }

  PathExpr left_fold(const std::vector<Step>& w) {
    PathExpr acc = one(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = PathExpr::comp({acc, one(w[i])});
    return acc;
  }

  PathExpr right_fold(const std::vector<Step>& w) {
    PathExpr acc = one(w.back());
    for (std::size_t i = w.size() - 1; i-- > 0;) acc = PathExpr::comp({one(w[i]), acc});
    return acc;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return pick(2) == 0; }

 private:
  PathExpr one(const Step& s) const {
    PathExpr p = atoms_[s.atom].path;
    return s.inverse ? PathExpr::inv(p) : p;
  }

  std::mt19937 rng_;
  std::vector<Atom> atoms_;
};

// Independent reduction: cancel adjacent (x,+)(x,-) pairs with a stack.
inline std::vector<std::pair<std::string, bool>> reduce(const std::vector<Atom>& pool, const std::vector<Step>& w) {
  std::vector<std::pair<std::string, bool>> st;
  for (const auto& s : w) {
    const std::string& k = pool[s.atom].key;
    if (!st.empty() && st.back().first == k && st.back().second != s.inverse) st.pop_back();
    else st.emplace_back(k, s.inverse);
  }
  return st;
}

// ---------------------------------------------------------------------------
// Builder instances

struct Instance {
  std::string label;
  MapRef f, g;
};

// Pairs f = g pointwise, on left-nested domains of 1 to 4 leaves.
inline std::vector<Instance> instance_pool() {
  const Shape A = Shape::leaf("A"), B = Shape::leaf("B"), C = Shape::leaf("C"), D = Shape::leaf("D");
  std::vector<Instance> out;
  for (const char* name : {"involution", "hexagon", "pentagon", "naturality-alpha", "naturality-beta"}) {
    auto d = diagram(name);
    out.push_back({name, d.lhs, d.rhs});
  }
  out.push_back({"id A", identity(A), identity(A)});
  out.push_back({"swap", swap(A, B), swap(A, B)});
  out.push_back({"alpha", associator(A, B, C), associator(A, B, C)});
  out.push_back({"alpha^1", smash_functor(associator(A, B, C), identity(D)), smash_functor(associator(A, B, C), identity(D))});
  return out;
}

// p~ with base value `loop` and every basepoint-slot point carried around it.
inline FakeHomotopy twisted(const FsShape& fs, const MapRef& f, const MapRef& g, const PathExpr& loop) {
  FakeHomotopy pt{f, g, loop, {}, {}};
  for (const auto& x : fs.generic_elements()) {
    PathExpr col = iota_push(fs, x);
    pt.points.push_back({left_nested_point(fs.gamma(x)),
                         PathExpr::comp({PathExpr::ap(f, col), loop, PathExpr::inv(PathExpr::ap(g, col))})});
  }
  for (int k = 0; k <= fs.n(); ++k) pt.squares.push_back(expected_push_square(fs, pt, k));
  return pt;
}

}  // namespace smashkit::testing
