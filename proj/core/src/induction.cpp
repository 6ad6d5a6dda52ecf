#include "smashkit/induction.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace smashkit {

namespace {

using P = PathExpr;

Term bp(const Shape& s) { return Term::basepoint(s); }

Term pair_ctx_left(const Shape& hole, const Term& right) { return Term::pair(Term::hole(hole), right); }
Term pair_ctx_right(const Term& left, const Shape& hole) { return Term::pair(left, Term::hole(hole)); }

// Composite that drops refl pieces; refl at `at` when nothing is left.
P chain(std::vector<P> parts, const Term& at) {
  std::vector<P> kept;
  for (auto& p : parts)
    if (!p.is(P::Kind::Refl)) kept.push_back(std::move(p));
  if (kept.empty()) return P::refl(at);
  return P::comp(std::move(kept));
}

P apc(const Term& ctx, const P& p) {
  if (p.is(P::Kind::Refl)) return P::refl(plug(ctx, p.term()));
  return P::ap_ctx(ctx, p);
}

P inv(const P& p) { return p.is(P::Kind::Refl) ? p : P::inv(p); }

bool constructor_point(const Term& t) {
  if (t.is(Term::Kind::App) || t.is(Term::Kind::Hole)) return false;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (!constructor_point(t.child(i))) return false;
  return true;
}

P pointwise(const MapRef& f, const MapRef& g, const std::vector<PointPath>& points, const Term& x) {
  if (!constructor_point(x)) throw Error(Errc::NonConstructorInput, "homotopy evaluated at " + x.str());
  for (const auto& pp : points) {
    Binding b;
    if (match(pp.pattern, x, b)) return substitute(pp.path, b);
  }
  Term fx = apply_map(f, x);
  Term gx = apply_map(g, x);
  if (fx != gx) throw Error(Errc::IllFormed, "no homotopy value at " + x.str() + ": " + fx.str() + " vs " + gx.str());
  return P::refl(fx);
}

// Variables named after the leaves, numbered when a name repeats.
std::vector<Term> leaf_vars(const std::vector<Shape>& leaves) {
  std::map<std::string, int> seen;
  for (const auto& l : leaves) seen[generic_var(l).var_name()]++;
  std::map<std::string, int> used;
  std::vector<Term> out;
  for (const auto& l : leaves) {
    std::string name = generic_var(l).var_name();
    if (seen[name] > 1) name += std::to_string(used[name]++);
    out.push_back(Term::var(name, l));
  }
  return out;
}

// A square family: the naturality square of h along a column `col` running
// from x upwards, quantified over `vars`.
struct Family {
  std::string tag;
  std::vector<Term> vars;
  Term x;
  P col;
};

void expand(const Homotopy& h, const Family& fam, std::vector<Obligation>& out) {
  std::vector<Binding> bindings{{}};
  std::vector<std::vector<std::string>> labels{{}};
  for (const auto& v : fam.vars) {
    if (!v.shape().is_unit()) {
      for (auto& l : labels) l.push_back(v.var_name());
      continue;
    }
    std::vector<Binding> nb;
    std::vector<std::vector<std::string>> nl;
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      for (const auto& [value, text] : {std::pair{bp(v.shape()), "*"}, std::pair{Term::unit_point(), "o"}}) {
        auto b = bindings[i];
        b[v.var_name()] = value;
        nb.push_back(b);
        auto l = labels[i];
        l.push_back(v.var_name() + "=" + text);
        nl.push_back(l);
      }
    }
    bindings = std::move(nb);
    labels = std::move(nl);
  }
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    Obligation ob{fam.tag, labels[i], {}, {}};
    try {
      Term x = substitute(fam.x, bindings[i]);
      P col = substitute(fam.col, bindings[i]);
      Term y = endpoints(col).second;
      ob.square = {h.at(x), h.at(y), P::ap(h.f, col), P::ap(h.g, col)};
    } catch (const Error& e) {
      ob.error = e.what();
    }
    out.push_back(std::move(ob));
  }
}

std::vector<Obligation> expand_all(const Homotopy& h, const std::vector<Family>& fams) {
  std::vector<Obligation> out;
  for (const auto& f : fams) expand(h, f, out);
  return out;
}

Family typing(std::string tag, const std::vector<Term>& vars) {
  Term x = left_nested_point(vars);
  return {std::move(tag), vars, x, P::refl(x)};
}

std::vector<Shape> leaves_or_throw(const std::optional<std::vector<Shape>>& l, std::size_t n,
                                   const Shape& s) {
  if (!l || l->size() != n)
    throw Error(Errc::IllFormed, "expected a left-nested smash of " + std::to_string(n) + " leaves, got " + s.str());
  return *l;
}

// Columns of the three-leaf families, as paths in ((A^B)^C).
struct TripleCols {
  Shape A, B, C, AB, S;
  Term sA, sB, sC, sAB;

  explicit TripleCols(const std::vector<Shape>& l)
      : A(l[0]), B(l[1]), C(l[2]), AB(Shape::smash(A, B)), S(Shape::smash(AB, C)),
        sA(bp(A)), sB(bp(B)), sC(bp(C)), sAB(bp(AB)) {}

  P ii(const Term& a, const Term& c) const {
    Term k = pair_ctx_left(AB, c);
    return P::comp({apc(k, P::push_l(AB, a)), inv(apc(k, P::push_l(AB, sA)))});
  }
  P iii(const Term& b, const Term& c) const {
    Term k = pair_ctx_left(AB, c);
    return P::comp({apc(k, P::push_r(AB, b)), inv(apc(k, P::push_r(AB, sB)))});
  }
  P iv(const Term& a, const Term& b) const {
    return P::comp({P::push_l(S, Term::pair(a, b)), inv(P::push_l(S, sAB)),
                    inv(apc(pair_ctx_left(AB, sC), P::push_r(AB, sB)))});
  }
  P v(const Term& c) const {
    return P::comp({apc(pair_ctx_left(AB, c), P::push_r(AB, sB)), P::push_r(S, c), inv(P::push_l(S, sAB)),
                    inv(apc(pair_ctx_left(AB, sC), P::push_r(AB, sB)))});
  }
};

std::vector<Family> binary_families(const std::vector<Shape>& l, const std::string& prefix) {
  Shape S = Shape::smash(l[0], l[1]);
  auto v = leaf_vars(l);
  Term sA = bp(l[0]), sB = bp(l[1]);
  return {
      {prefix + "-L", {v[0]}, Term::pair(v[0], sB), P::comp({P::push_l(S, v[0]), inv(P::push_l(S, sA))})},
      {prefix + "-R", {v[1]}, Term::pair(sA, v[1]), P::comp({P::push_r(S, v[1]), inv(P::push_r(S, sB))})},
  };
}

std::vector<Family> triple_families(const std::vector<Shape>& l) {
  TripleCols t(l);
  auto v = leaf_vars(l);
  const Term &a = v[0], &b = v[1], &c = v[2];
  return {
      typing("L17-i", v),
      {"L17-ii", {a, c}, Term::pair(Term::pair(a, t.sB), c), t.ii(a, c)},
      {"L17-iii", {b, c}, Term::pair(Term::pair(t.sA, b), c), t.iii(b, c)},
      {"L17-iv", {a, b}, Term::pair(Term::pair(a, b), t.sC), t.iv(a, b)},
      {"L17-v", {c}, Term::pair(Term::pair(t.sA, t.sB), c), t.v(c)},
  };
}

std::vector<Family> quadruple_families(const std::vector<Shape>& l) {
  TripleCols t(l);
  Shape D = l[3];
  Shape ABC = t.S;
  Shape S = Shape::smash(ABC, D);
  Term sD = bp(D), sABC = bp(ABC);
  auto v = leaf_vars(l);
  const Term &a = v[0], &b = v[1], &c = v[2], &d = v[3];
  auto under = [&](const Term& dd) { return pair_ctx_left(ABC, dd); };
  auto under2 = [&](const Term& cc, const Term& dd) { return Term::pair(pair_ctx_left(t.AB, cc), dd); };
  auto pt = [&](const Term& x, const Term& y, const Term& z, const Term& w) {
    return Term::pair(Term::pair(Term::pair(x, y), z), w);
  };
  P vi = P::comp({apc(under2(t.sC, d), P::push_l(t.AB, t.sA)), apc(under(d), P::push_l(ABC, t.sAB)),
                  P::push_r(S, d), inv(P::push_l(S, sABC)), inv(apc(under(sD), P::push_l(ABC, t.sAB))),
                  inv(apc(under2(t.sC, sD), P::push_l(t.AB, t.sA)))});
  P vii = P::comp({P::push_l(S, Term::pair(Term::pair(a, b), c)), inv(P::push_l(S, sABC)),
                   inv(apc(under(sD), P::push_l(ABC, t.sAB))), inv(apc(under2(t.sC, sD), P::push_l(t.AB, t.sA)))});
  return {
      typing("L18-i", v),
      {"L18-ii", {a, b, d}, pt(a, b, t.sC, d), apc(under(d), t.iv(a, b))},
      {"L18-iii", {a, c, d}, pt(a, t.sB, c, d), apc(under(d), t.ii(a, c))},
      {"L18-iv", {b, c, d}, pt(t.sA, b, c, d), apc(under(d), t.iii(b, c))},
      {"L18-v", {c, d}, pt(t.sA, t.sB, c, d), apc(under(d), t.v(c))},
      {"L18-vi", {d}, pt(t.sA, t.sB, t.sC, d), vi},
      {"L18-vii", {a, b, c}, pt(a, b, c, sD), vii},
  };
}

// Context placing the k-leaf prefix inside the whole left-nested smash, with
// `outer` filling the remaining leaves.
Term prefix_ctx(const std::vector<Shape>& l, std::size_t k, const std::vector<Term>& outer) {
  Term ctx = Term::hole(left_nested(l));
  for (std::size_t j = l.size() - 1; j > k; --j)
    ctx = plug(ctx, pair_ctx_left(left_nested({l.begin(), l.begin() + j}), outer[j]));
  return ctx;
}

std::vector<Family> nfold_families(const std::vector<Shape>& l) {
  auto v = leaf_vars(l);
  const std::string prefix = "N" + std::to_string(l.size());
  std::vector<Family> out{typing(prefix + "-i", v)};
  for (std::size_t k = 1; k < l.size(); ++k) {
    // Level k: S_k = S_{k-1} ^ X_k inside C_k.
    Shape Sprev = left_nested({l.begin(), l.begin() + k});
    Shape Sk = Shape::smash(Sprev, l[k]);
    Term C = prefix_ctx(l, k, v);
    std::vector<Term> outer(v.begin() + k + 1, v.end());
    Term sk = bp(l[k]);
    P ladder = basepoint_ladder(Sprev);
    Term allbp = all_basepoints(Sprev);
    std::string lvl = prefix + "-" + std::to_string(k);

    std::vector<Term> lv(v.begin(), v.begin() + k);
    lv.insert(lv.end(), outer.begin(), outer.end());
    Term lpt = left_nested_point({v.begin(), v.begin() + k});
    P lcol = chain({apc(C, P::push_l(Sk, lpt)), apc(C, inv(P::push_l(Sk, bp(Sprev)))),
                    inv(apc(plug(C, pair_ctx_left(Sprev, sk)), ladder))},
                   plug(C, Term::pair(lpt, sk)));
    out.push_back({lvl + "L", lv, plug(C, Term::pair(lpt, sk)), lcol});

    std::vector<Term> rv{v[k]};
    rv.insert(rv.end(), outer.begin(), outer.end());
    Term rx = plug(C, Term::pair(k == 1 ? bp(l[0]) : allbp, v[k]));
    P rcol;
    if (k == 1) {
      rcol = apc(C, P::comp({P::push_r(Sk, v[k]), inv(P::push_r(Sk, sk))}));
    } else {
      rcol = chain({apc(plug(C, pair_ctx_left(Sprev, v[k])), ladder), apc(C, P::push_r(Sk, v[k])),
                    apc(C, inv(P::push_l(Sk, bp(Sprev)))), inv(apc(plug(C, pair_ctx_left(Sprev, sk)), ladder))},
                   rx);
    }
    out.push_back({lvl + "R", rv, rx, rcol});
  }
  return out;
}

std::string family_prefix(std::size_t leaves) {
  switch (leaves) {
    case 1: return "L0";
    case 2: return "L16";
    case 3: return "L17";
    case 4: return "L18";
    default: return "N" + std::to_string(leaves);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

PathExpr Homotopy::at(const Term& x) const {
  if (base && x == bp(f->domain())) return *base;
  return pointwise(f, g, points, x);
}

PathExpr Homotopy::at_base() const { return at(bp(f->domain())); }

Homotopy Homotopy::refl(MapRef f, MapRef g) { return {std::move(f), std::move(g), {}, std::nullopt, std::nullopt}; }

Homotopy Homotopy::of(const DiagramSides& d) { return {d.lhs, d.rhs, d.witness, std::nullopt, d.ladder}; }

std::optional<std::vector<Shape>> left_nested_leaves(const Shape& s) {
  if (s.is_leaf()) return std::vector<Shape>{s};
  if (s.kind() != Shape::Kind::Smash || !s.child(1).is_leaf()) return std::nullopt;
  auto l = left_nested_leaves(s.child(0));
  if (!l) return std::nullopt;
  l->push_back(s.child(1));
  return l;
}

Shape left_nested(const std::vector<Shape>& leaves) {
  if (leaves.empty()) throw Error(Errc::IllFormed, "empty smash");
  Shape s = leaves[0];
  for (std::size_t i = 1; i < leaves.size(); ++i) s = Shape::smash(s, leaves[i]);
  return s;
}

Term left_nested_point(const std::vector<Term>& coords) {
  if (coords.empty()) throw Error(Errc::IllFormed, "empty tuple");
  Term t = coords[0];
  for (std::size_t i = 1; i < coords.size(); ++i) t = Term::pair(t, coords[i]);
  return t;
}

NormalWord L_transform(const Homotopy& h, const Term& a) {
  const Shape& S = h.f->domain();
  if (S.kind() != Shape::Kind::Smash) throw Error(Errc::IllFormed, "L transform needs a smash domain");
  P col = P::push_l(S, a);
  return normalize(P::comp({inv(P::ap(h.f, col)), h.at(Term::pair(a, bp(S.child(1)))), P::ap(h.g, col)}));
}

NormalWord R_transform(const Homotopy& h, const Term& b) {
  const Shape& S = h.f->domain();
  if (S.kind() != Shape::Kind::Smash) throw Error(Errc::IllFormed, "R transform needs a smash domain");
  P col = P::push_r(S, b);
  return normalize(P::comp({inv(P::ap(h.f, col)), h.at(Term::pair(bp(S.child(0)), b)), P::ap(h.g, col)}));
}

std::vector<Obligation> obligations_binary(const Homotopy& h) {
  auto l = leaves_or_throw(left_nested_leaves(h.f->domain()), 2, h.f->domain());
  return expand_all(h, binary_families(l, "L16"));
}

std::vector<Obligation> obligations_triple(const Homotopy& h) {
  auto l = leaves_or_throw(left_nested_leaves(h.f->domain()), 3, h.f->domain());
  return expand_all(h, triple_families(l));
}

std::vector<Obligation> obligations_quadruple(const Homotopy& h) {
  auto l = leaves_or_throw(left_nested_leaves(h.f->domain()), 4, h.f->domain());
  return expand_all(h, quadruple_families(l));
}

std::vector<Obligation> obligations_nfold(const Homotopy& h) {
  auto l = left_nested_leaves(h.f->domain());
  if (!l || l->size() < 2) throw Error(Errc::IllFormed, "expected a left-nested smash, got " + h.f->domain().str());
  return expand_all(h, nfold_families(*l));
}

PathExpr basepoint_ladder(const Shape& s) {
  Term all = all_basepoints(s);
  switch (s.kind()) {
    case Shape::Kind::Leaf: return P::refl(all);
    case Shape::Kind::Smash: {
      const Shape &l = s.child(0), &r = s.child(1);
      return chain({apc(pair_ctx_left(l, all_basepoints(r)), basepoint_ladder(l)),
                    apc(pair_ctx_right(bp(l), r), basepoint_ladder(r)), P::push_l(s, bp(l))},
                   all);
    }
    case Shape::Kind::Triple: {
      std::vector<P> parts;
      std::vector<Term> kids{all_basepoints(s.child(0)), all_basepoints(s.child(1)), all_basepoints(s.child(2))};
      for (std::size_t i = 0; i < 3; ++i) {
        auto frame = kids;
        frame[i] = Term::hole(s.child(i));
        parts.push_back(apc(Term::triple(frame[0], frame[1], frame[2]), basepoint_ladder(s.child(i))));
        kids[i] = bp(s.child(i));
      }
      parts.push_back(P::gen(s, PushKind::P0, {bp(s.child(1)), bp(s.child(2))}));
      return chain(std::move(parts), all);
    }
  }
  return P::refl(all);
}

Obligation pointedness_obligation(const Homotopy& h) {
  auto l = left_nested_leaves(h.f->domain());
  Obligation ob{family_prefix(l ? l->size() : 0) + "-pt", {}, {}, {}};
  try {
    const Shape& S = h.f->domain();
    P ladder = h.ladder ? *h.ladder : basepoint_ladder(S);
    ob.square = {h.at(all_basepoints(S)), chain({P::pointedness(h.f), inv(P::pointedness(h.g))}, apply_map(h.f, bp(S))),
                 P::ap(h.f, ladder), P::ap(h.g, ladder)};
  } catch (const Error& e) {
    ob.error = e.what();
  }
  return ob;
}

std::vector<Obligation> obligations_for(const Homotopy& h, bool pointed) {
  auto l = left_nested_leaves(h.f->domain());
  if (!l) throw Error(Errc::IllFormed, "no square families for the shape " + h.f->domain().str());
  std::vector<Obligation> out;
  switch (l->size()) {
    case 1: out = expand_all(h, {typing("L0-i", leaf_vars(*l))}); break;
    case 2: out = obligations_binary(h); break;
    case 3: out = obligations_triple(h); break;
    case 4: out = obligations_quadruple(h); break;
    default: out = obligations_nfold(h); break;
  }
  if (pointed) out.push_back(pointedness_obligation(h));
  return out;
}

std::size_t family_count(const std::vector<Obligation>& obs) {
  std::set<std::string> tags;
  for (const auto& o : obs) tags.insert(o.tag);
  return tags.size();
}

bool DischargeReport::ok() const { return first_failure() == nullptr; }

const ObligationReport* DischargeReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.fillable) return &e;
  return nullptr;
}

DischargeReport discharge(const std::vector<Obligation>& obs) {
  DischargeReport r;
  for (const auto& o : obs) {
    ObligationReport e{o.tag, o.vars, false, {}, {}, o.error};
    if (e.error.empty()) {
      try {
        auto fc = check_fill(o.square);
        e.fillable = fc.fillable;
        e.lhs_word = std::move(fc.lhs);
        e.rhs_word = std::move(fc.rhs);
      } catch (const Error& err) {
        e.error = err.what();
      }
    }
    r.entries.push_back(std::move(e));
  }
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const ObligationReport& a, const ObligationReport& b) { return a.tag < b.tag; });
  return r;
}

// ---------------------------------------------------------------------------
// ~^

FsShape::FsShape(std::vector<Shape> leaves) : leaves_(std::move(leaves)) {
  if (leaves_.empty()) throw Error(Errc::IllFormed, "FS needs at least one leaf");
}

std::size_t FsShape::fs_size(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw Error(Errc::IllFormed, "FS needs at least one leaf");
  if (sizes.size() == 1) return 1;
  std::vector<std::size_t> prefix(sizes.begin(), sizes.end() - 1);
  std::size_t prod = 1;
  for (auto s : prefix) prod *= s;
  return fs_size(prefix) * sizes.back() + prod;
}

std::vector<FsElem> FsShape::generic_elements() const {
  auto v = leaf_vars(leaves_);
  std::vector<FsElem> out;
  for (int k = 0; k <= n(); ++k) {
    FsElem e{k, v};
    e.coords[k] = bp(leaves_[k]);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Term> FsShape::gamma(const FsElem& x) const {
  if (x.coords.size() != leaves_.size() || x.slot < 0 || x.slot > n())
    throw Error(Errc::IllFormed, "FS element does not fit " + smash_shape().str());
  auto c = x.coords;
  c[x.slot] = bp(leaves_[x.slot]);
  return c;
}

FsElem FsShape::drop_last(const FsElem& x) const {
  if (x.slot >= n()) throw Error(Errc::IllFormed, "element lies in the last summand");
  return {x.slot, {x.coords.begin(), x.coords.end() - 1}};
}

Term iota(const FsShape& fs, const FakePoint& x) {
  if (x.base) return bp(fs.smash_shape());
  if (x.coords.size() != fs.leaves().size()) throw Error(Errc::IllFormed, "tuple length does not match the shape");
  return left_nested_point(x.coords);
}

PathExpr iota_push(const FsShape& fs, const FsElem& x) {
  auto c = fs.gamma(x);
  int n = fs.n();
  if (n == 0) return P::refl(bp(fs.leaves()[0]));
  Shape S = fs.smash_shape();
  if (x.slot == n) return P::push_l(S, left_nested_point({c.begin(), c.end() - 1}));
  FsShape prev({fs.leaves().begin(), fs.leaves().end() - 1});
  return chain({apc(pair_ctx_left(prev.smash_shape(), c.back()), iota_push(prev, fs.drop_last(x))),
                P::push_r(S, c.back())},
               left_nested_point(c));
}

FakePoint lift_up(const FakePoint& x, const Term& an) {
  if (x.base) return x;
  FakePoint y = x;
  y.coords.push_back(an);
  return y;
}

PathExpr up_coh(const FsShape& fs_next, const FakePoint& x, const Term& an) {
  for (const auto& c : x.coords)
    if (!constructor_point(c)) throw Error(Errc::NonConstructorInput, "up_coh at " + c.str());
  if (!constructor_point(an)) throw Error(Errc::NonConstructorInput, "up_coh at " + an.str());
  if (x.base) return P::inv(P::push_r(fs_next.smash_shape(), an));
  return P::refl(iota(fs_next, lift_up(x, an)));
}

PathExpr FakeHomotopy::at(const std::vector<Term>& coords) const {
  return pointwise(f, g, points, left_nested_point(coords));
}

FakeHomotopy FakeHomotopy::refl(const FsShape& fs, MapRef f, MapRef g) {
  FakeHomotopy h{std::move(f), std::move(g), {}, {}, {}};
  Term s = bp(fs.smash_shape());
  Term fs_ = apply_map(h.f, s);
  if (fs_ != apply_map(h.g, s)) throw Error(Errc::IllFormed, "maps disagree at the basepoint");
  h.base = P::refl(fs_);
  for (int k = 0; k <= fs.n(); ++k) h.squares.push_back(expected_push_square(fs, h, k));
  return h;
}

Square expected_push_square(const FsShape& fs, const FakeHomotopy& pt, int slot) {
  FsElem x = fs.generic_elements().at(slot);
  P col = iota_push(fs, x);
  return {pt.at(fs.gamma(x)), pt.base, P::ap(pt.f, col), P::ap(pt.g, col)};
}

namespace {

std::string side_name(int i) {
  static const char* names[] = {"top", "bottom", "left", "right"};
  return names[i];
}

void require_fill(const std::string& tag, const Square& sq) {
  FillCheck fc;
  try {
    fc = check_fill(sq);
  } catch (const Error& e) {
    throw Error(Errc::ObligationFailed, tag + ": " + e.what());
  }
  if (!fc.fillable)
    throw Error(Errc::ObligationFailed, tag + " does not fill: " + fc.lhs.str() + " vs " + fc.rhs.str());
}

}  // namespace

BuildResult build_homotopy(const FsShape& fs, const FakeHomotopy& pt) {
  const int n = fs.n();
  Shape S = fs.smash_shape();
  if (pt.f->domain() != S || pt.g->domain() != S)
    throw Error(Errc::SortMismatch, "homotopy maps do not start at " + S.str());
  if (pt.squares.size() != static_cast<std::size_t>(n + 1))
    throw Error(Errc::IllFormed, "expected " + std::to_string(n + 1) + " push squares");

  BuildResult out;
  auto v = leaf_vars(fs.leaves());
  std::vector<std::string> names;
  for (const auto& t : v) names.push_back(t.var_name());

  for (int k = 0; k <= n; ++k) {
    std::string tag = "T27-push-" + std::to_string(k);
    const Square& given = pt.squares[k];
    Square want = expected_push_square(fs, pt, k);
    const P* g[] = {&given.top, &given.bottom, &given.left, &given.right};
    const P* w[] = {&want.top, &want.bottom, &want.left, &want.right};
    for (int i = 0; i < 4; ++i) {
      NormalWord gw, ww;
      try {
        gw = normalize(*g[i]);
        ww = normalize(*w[i]);
      } catch (const Error& e) {
        throw Error(Errc::ObligationFailed, tag + " " + side_name(i) + ": " + e.what());
      }
      if (gw != ww)
        throw Error(Errc::ObligationFailed,
                    tag + " " + side_name(i) + " is " + gw.str() + ", boundary needs " + ww.str());
    }
    require_fill(tag, given);
    out.checked.push_back({tag, names, given, {}});
  }

  Homotopy h{pt.f, pt.g, {}, pt.base, std::nullopt};
  auto finish = [&] {
    h.points.insert(h.points.end(), pt.points.begin(), pt.points.end());
    h.points.push_back({left_nested_point(v), pt.at(v)});
    out.homotopy = std::move(h);
  };
  if (n == 0) {
    finish();
    return out;
  }

  // ctx[k] places S_k inside S_n with generic outer leaves; base[k] is the
  // value at its basepoint, transported down one level at a time along up_coh.
  std::vector<Term> ctx(n + 1);
  std::vector<P> base(n + 1);
  std::vector<Shape> Sk(n + 1);
  for (int k = 0; k <= n; ++k) Sk[k] = left_nested({fs.leaves().begin(), fs.leaves().begin() + k + 1});
  ctx[n] = Term::hole(S);
  base[n] = pt.base;
  for (int k = n; k >= 1; --k) {
    ctx[k - 1] = plug(ctx[k], pair_ctx_left(Sk[k - 1], v[k]));
    FsShape level({fs.leaves().begin(), fs.leaves().begin() + k + 1});
    P coh = apc(ctx[k], up_coh(level, FakePoint{true, {}}, v[k]));
    base[k - 1] = chain({P::inv(P::ap(pt.f, coh)), base[k], P::ap(pt.g, coh)}, apply_map(pt.f, plug(ctx[k - 1], bp(Sk[k - 1]))));
    if (k - 1 >= 1) h.points.push_back({plug(ctx[k - 1], bp(Sk[k - 1])), base[k - 1]});
  }

  for (int k = 1; k <= n; ++k) {
    std::vector<Term> outer(v.begin() + k + 1, v.end());
    std::vector<std::string> lbl(names.begin() + k, names.end());

    auto lowered = v;
    lowered[0] = bp(fs.leaves()[0]);
    P ctop = k == 1 ? pt.at(lowered) : base[k - 1];
    P rcol = apc(ctx[k], P::push_r(Sk[k], v[k]));
    Square c{ctop, base[k], P::ap(pt.f, rcol), P::ap(pt.g, rcol)};
    std::string ctag = "T27-c-" + std::to_string(k);
    require_fill(ctag, c);
    out.checked.push_back({ctag, lbl, c, {}});

    auto starred = v;
    starred[k] = bp(fs.leaves()[k]);
    P lcol = apc(ctx[k], P::push_l(Sk[k], left_nested_point({v.begin(), v.begin() + k})));
    Square d{pt.at(starred), base[k], P::ap(pt.f, lcol), P::ap(pt.g, lcol)};
    std::vector<std::string> dl(names.begin(), names.begin() + k);
    dl.insert(dl.end(), names.begin() + k + 1, names.end());
    std::string dtag = "T27-d-" + std::to_string(k);
    require_fill(dtag, d);
    out.checked.push_back({dtag, dl, d, {}});
  }

  finish();
  return out;
}

}  // namespace smashkit
