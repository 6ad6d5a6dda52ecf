#pragma once

// Set-level model: leaves are finite pointed sets, a smash is the product
// with every tuple touching a basepoint collapsed to one point. Maps are
// evaluated clause by clause on tuples, so a diagram can be checked
// pointwise by enumeration.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "smashkit/structure_maps.hpp"

namespace smashkit {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n = 0);
  std::size_t add();
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }
  std::size_t classes();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

// Leaf name -> cardinality (basepoint included). The unit I always has 2.
using Sizes = std::map<std::string, std::size_t>;

// Element k of a leaf: 0 is the basepoint; I's element 1 is o.
Term leaf_element(const Shape& leaf, std::size_t k);
std::size_t leaf_size(const Shape& leaf, const Sizes& sizes);
// Collapses any pair or triple with a basepoint component.
Term canon(const Term& t);

class SmashModel {
 public:
  SmashModel(Shape shape, const Sizes& sizes);

  const Shape& shape() const { return shape_; }
  // Every formal tuple of leaf elements, plus the basepoint (index 0).
  const std::vector<Term>& raw() const { return raw_; }
  // One representative per class, basepoint first.
  const std::vector<Term>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  // Class index of a canonical value; throws IllFormed when it is not a point
  // of this model.
  std::size_t index_of(const Term& value) const;

 private:
  Shape shape_;
  std::vector<Term> raw_;
  std::vector<Term> elements_;
  std::map<std::string, std::size_t> index_;
};

// Abstract map name -> function on canonical values.
using Interp = std::map<std::string, std::function<Term(const Term&)>>;

Term eval_map(const MapRef& map, const Term& value, const Interp& interp = {});

// Abstract maps reachable from `map` through stages and clause values.
std::vector<MapRef> abstract_maps(const MapRef& map);

struct Counterexample {
  Term input;
  Term lhs;
  Term rhs;
  std::string reason;  // "sides differ" or "not well defined"
};

struct ModelReport {
  std::string diagram;
  Sizes sizes;
  bool ok = true;
  std::size_t checked = 0;  // points times interpretations
  std::optional<Counterexample> counterexample;
};

// Sizes of primed leaves default to the unprimed ones.
Sizes complete_sizes(const Shape& s, Sizes sizes);
// Assigns `list` to the non-unit leaves of `s` in order of first appearance.
Sizes sizes_for(const Shape& s, const std::vector<std::size_t>& list);

// Every pointed function between leaves of the given sizes, as tables.
std::vector<std::vector<std::size_t>> pointed_functions(std::size_t from, std::size_t to);

// Checks lhs = rhs on every raw tuple (so well-definedness on the quotient is
// covered too), for every interpretation of the abstract maps by pointed
// functions, or a single given one.
ModelReport check_diagram(const DiagramSides& d, const Sizes& sizes);
ModelReport check_diagram(const DiagramSides& d, const Sizes& sizes, const Interp& interp);

struct BijectionReport {
  bool well_defined = true;
  bool injective = true;
  bool surjective = true;
  bool ok() const { return well_defined && injective && surjective; }
};

BijectionReport check_bijection(const MapRef& map, const Sizes& sizes, const Interp& interp = {});

nlohmann::json to_json(const ModelReport& r);

// SMASHKIT_MAX_SIZE, default 4.
std::size_t max_model_size();

}  // namespace smashkit
