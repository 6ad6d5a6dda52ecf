#include "smashkit/finite_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace smashkit {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::add() {
  parent_.push_back(parent_.size());
  rank_.push_back(0);
  return parent_.size() - 1;
}

std::size_t DisjointSet::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

std::size_t DisjointSet::classes() {
  std::size_t n = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i;
  return n;
}

Term leaf_element(const Shape& leaf, std::size_t k) {
  if (k == 0) return Term::basepoint(leaf);
  if (leaf.is_unit()) {
    if (k != 1) throw Error(Errc::IllFormed, "I has two elements");
    return Term::unit_point();
  }
  return Term::var(generic_var(leaf).var_name() + "#" + std::to_string(k), leaf);
}

std::size_t leaf_size(const Shape& leaf, const Sizes& sizes) {
  if (leaf.is_unit()) return 2;
  auto it = sizes.find(leaf.name());
  if (it == sizes.end()) throw Error(Errc::IllFormed, "no size given for leaf " + leaf.name());
  if (it->second == 0) throw Error(Errc::IllFormed, "leaf " + leaf.name() + " needs a basepoint");
  return it->second;
}

Term canon(const Term& t) {
  if (!t.is(Term::Kind::Pair) && !t.is(Term::Kind::TriplePt)) return t;
  std::vector<Term> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Term k = canon(t.child(i));
    if (k.is(Term::Kind::Basepoint)) return Term::basepoint(t.shape());
    kids.push_back(std::move(k));
  }
  return kids.size() == 2 ? Term::pair(kids[0], kids[1]) : Term::triple(kids[0], kids[1], kids[2]);
}

namespace {

std::vector<Term> raw_points(const Shape& s, const Sizes& sizes) {
  std::vector<Term> out;
  if (s.is_leaf()) {
    for (std::size_t k = 0, n = leaf_size(s, sizes); k < n; ++k) out.push_back(leaf_element(s, k));
    return out;
  }
  out.push_back(Term::basepoint(s));
  std::vector<std::vector<Term>> kids;
  for (std::size_t i = 0; i < s.arity(); ++i) kids.push_back(raw_points(s.child(i), sizes));
  if (s.arity() == 2) {
    for (const auto& a : kids[0])
      for (const auto& b : kids[1]) out.push_back(Term::pair(a, b));
  } else {
    for (const auto& a : kids[0])
      for (const auto& b : kids[1])
        for (const auto& c : kids[2]) out.push_back(Term::triple(a, b, c));
  }
  return out;
}

}  // namespace

SmashModel::SmashModel(Shape shape, const Sizes& sizes) : shape_(std::move(shape)) {
  raw_ = raw_points(shape_, sizes);
  // Index 0 is the basepoint for a smash; a leaf keeps its own elements.
  DisjointSet ds(raw_.size());
  for (std::size_t i = 1; i < raw_.size(); ++i) {
    const Term& t = raw_[i];
    if (!t.is(Term::Kind::Pair) && !t.is(Term::Kind::TriplePt)) continue;
    for (std::size_t j = 0; j < t.arity(); ++j)
      if (canon(t.child(j)).is(Term::Kind::Basepoint)) ds.unite(0, i);
  }
  std::map<std::size_t, std::size_t> seen;
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    std::size_t root = ds.find(i);
    if (seen.count(root)) continue;
    seen[root] = elements_.size();
    Term rep = canon(raw_[i]);
    index_[rep.key()] = elements_.size();
    elements_.push_back(std::move(rep));
  }
}

std::size_t SmashModel::index_of(const Term& value) const {
  auto it = index_.find(canon(value).key());
  if (it == index_.end()) throw Error(Errc::IllFormed, value.str() + " is not a point of " + shape_.str());
  return it->second;
}

namespace {

Term eval_term(const Term& t, const Interp& interp) {
  switch (t.kind()) {
    case Term::Kind::App: return eval_map(t.map(), eval_term(t.child(0), interp), interp);
    case Term::Kind::Pair: return canon(Term::pair(eval_term(t.child(0), interp), eval_term(t.child(1), interp)));
    case Term::Kind::TriplePt:
      return canon(Term::triple(eval_term(t.child(0), interp), eval_term(t.child(1), interp),
                                eval_term(t.child(2), interp)));
    case Term::Kind::Hole: throw Error(Errc::IllFormed, "cannot evaluate a context");
    default: return t;
  }
}

void collect_abstract(const MapRef& m, std::vector<MapRef>& out, std::set<const MapDef*>& seen) {
  if (!seen.insert(m.get()).second) return;
  switch (m->kind()) {
    case MapDef::Kind::Abstract: out.push_back(m); return;
    case MapDef::Kind::Composite:
      for (const auto& s : m->stages()) collect_abstract(s, out, seen);
      return;
    case MapDef::Kind::Table: {
      std::function<void(const Term&)> walk = [&](const Term& t) {
        if (t.is(Term::Kind::App)) collect_abstract(t.map(), out, seen);
        for (std::size_t i = 0; i < t.arity(); ++i) walk(t.child(i));
      };
      for (const auto& c : m->point_clauses()) walk(c.value);
      return;
    }
  }
}

}  // namespace

Term eval_map(const MapRef& map, const Term& value, const Interp& interp) {
  switch (map->kind()) {
    case MapDef::Kind::Composite: {
      Term v = value;
      for (const auto& s : map->stages()) v = eval_map(s, v, interp);
      return v;
    }
    case MapDef::Kind::Abstract: {
      auto it = interp.find(map->name());
      if (it == interp.end()) throw Error(Errc::IllFormed, "no interpretation for " + map->name());
      return canon(it->second(canon(value)));
    }
    case MapDef::Kind::Table: break;
  }
  for (const auto& c : map->point_clauses()) {
    Binding b;
    if (match(c.pattern, value, b)) return eval_term(substitute(c.value, b), interp);
  }
  throw Error(Errc::UnknownClause, map->name() + " has no point clause for " + value.str());
}

std::vector<MapRef> abstract_maps(const MapRef& map) {
  std::vector<MapRef> out;
  std::set<const MapDef*> seen;
  collect_abstract(map, out, seen);
  return out;
}

Sizes complete_sizes(const Shape& s, Sizes sizes) {
  for (const auto& name : s.leaf_names()) {
    if (name == "I" || sizes.count(name)) continue;
    std::string base = name;
    while (!base.empty() && base.back() == '\'') base.pop_back();
    if (sizes.count(base)) sizes[name] = sizes[base];
  }
  return sizes;
}

Sizes sizes_for(const Shape& s, const std::vector<std::size_t>& list) {
  std::vector<std::string> names;
  for (const auto& n : s.leaf_names())
    if (n != "I" && std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  if (list.size() != names.size() && list.size() != 1)
    throw Error(Errc::IllFormed, std::to_string(names.size()) + " sizes needed for " + s.str() + ", got " +
                                     std::to_string(list.size()));
  Sizes out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = list.size() == 1 ? list[0] : list[i];
  return out;
}

std::vector<std::vector<std::size_t>> pointed_functions(std::size_t from, std::size_t to) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(from, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = 1;
    while (i < from && ++t[i] == to) t[i++] = 0;
    if (i >= from) break;
  }
  return out;
}

namespace {

std::function<Term(const Term&)> table_function(const Shape& dom, const Shape& cod,
                                                const std::vector<std::size_t>& table) {
  std::map<std::string, Term> m;
  for (std::size_t k = 0; k < table.size(); ++k) m.emplace(leaf_element(dom, k).key(), leaf_element(cod, table[k]));
  return [m = std::move(m)](const Term& x) {
    auto it = m.find(x.key());
    if (it == m.end()) throw Error(Errc::IllFormed, "no value at " + x.str());
    return it->second;
  };
}

}  // namespace

ModelReport check_diagram(const DiagramSides& d, const Sizes& sizes, const Interp& interp) {
  ModelReport r{d.name, sizes, true, 0, std::nullopt};
  SmashModel model(d.domain(), sizes);
  for (const auto& t : model.raw()) {
    ++r.checked;
    Term l = eval_map(d.lhs, t, interp);
    Term rr = eval_map(d.rhs, t, interp);
    if (l != rr) {
      r.ok = false;
      r.counterexample = Counterexample{t, l, rr, "sides differ"};
      return r;
    }
    Term c = canon(t);
    if (c != t) {
      Term lc = eval_map(d.lhs, c, interp);
      Term rc = eval_map(d.rhs, c, interp);
      if (lc != l || rc != rr) {
        r.ok = false;
        r.counterexample = Counterexample{t, lc != l ? l : rr, lc != l ? lc : rc, "not well defined"};
        return r;
      }
    }
  }
  return r;
}

ModelReport check_diagram(const DiagramSides& d, const Sizes& sizes_in) {
  Sizes sizes = complete_sizes(d.codomain(), complete_sizes(d.domain(), sizes_in));
  std::vector<MapRef> abs;
  std::set<std::string> names;
  for (const auto& m : abstract_maps(d.lhs))
    if (names.insert(m->name()).second) abs.push_back(m);
  for (const auto& m : abstract_maps(d.rhs))
    if (names.insert(m->name()).second) abs.push_back(m);

  std::vector<std::vector<std::vector<std::size_t>>> choices;
  for (const auto& m : abs) {
    if (!m->domain().is_leaf() || !m->codomain().is_leaf())
      throw Error(Errc::IllFormed, "abstract map " + m->name() + " is not between leaves");
    Sizes all = complete_sizes(m->codomain(), complete_sizes(m->domain(), sizes));
    choices.push_back(pointed_functions(leaf_size(m->domain(), all), leaf_size(m->codomain(), all)));
    sizes = all;
  }

  ModelReport total{d.name, sizes, true, 0, std::nullopt};
  std::vector<std::size_t> pick(abs.size(), 0);
  while (true) {
    Interp interp;
    for (std::size_t i = 0; i < abs.size(); ++i)
      interp[abs[i]->name()] = table_function(abs[i]->domain(), abs[i]->codomain(), choices[i][pick[i]]);
    ModelReport r = check_diagram(d, sizes, interp);
    total.checked += r.checked;
    if (!r.ok) {
      total.ok = false;
      total.counterexample = r.counterexample;
      return total;
    }
    std::size_t i = 0;
    while (i < abs.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == abs.size()) break;
  }
  return total;
}

BijectionReport check_bijection(const MapRef& map, const Sizes& sizes_in, const Interp& interp) {
  Sizes sizes = complete_sizes(map->codomain(), complete_sizes(map->domain(), sizes_in));
  SmashModel dom(map->domain(), sizes), cod(map->codomain(), sizes);
  BijectionReport r;
  for (const auto& t : dom.raw())
    if (eval_map(map, t, interp) != eval_map(map, canon(t), interp)) r.well_defined = false;
  std::vector<int> hits(cod.size(), 0);
  for (const auto& e : dom.elements()) hits[cod.index_of(eval_map(map, e, interp))]++;
  for (int h : hits) {
    if (h > 1) r.injective = false;
    if (h == 0) r.surjective = false;
  }
  return r;
}

nlohmann::json to_json(const ModelReport& r) {
  nlohmann::json j;
  j["diagram"] = r.diagram;
  j["sizes"] = r.sizes;
  j["ok"] = r.ok;
  j["checked"] = r.checked;
  if (r.counterexample) {
    j["counterexample"] = {{"input", r.counterexample->input.str()},
                           {"lhs", r.counterexample->lhs.str()},
                           {"rhs", r.counterexample->rhs.str()},
                           {"reason", r.counterexample->reason}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

std::size_t max_model_size() {
  const char* v = std::getenv("SMASHKIT_MAX_SIZE");
  if (!v || !*v) return 4;
  char* end = nullptr;
  unsigned long n = std::strtoul(v, &end, 10);
  if (*end || n == 0) throw Error(Errc::IllFormed, std::string("SMASHKIT_MAX_SIZE must be a positive integer, got ") + v);
  return n;
}

}  // namespace smashkit
