#pragma once

// The named maps of the symmetric monoidal structure, as clause tables, and
// the two sides of each coherence diagram.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smashkit/term.hpp"

namespace smashkit {

MapRef identity(const Shape& s);
MapRef swap(const Shape& a, const Shape& b);
MapRef smash_functor(const MapRef& f, const MapRef& g);

MapRef to_triple(const Shape& a, const Shape& b, const Shape& c);
MapRef from_triple(const Shape& a, const Shape& b, const Shape& c);
// Output slot j carries input slot perm[j].
MapRef permute_triple(const Shape& triple, std::array<int, 3> perm);
MapRef associator(const Shape& a, const Shape& b, const Shape& c);
// ((a,b),c) -> (b,(a,c)): a well-formed map that is not the associator.
MapRef wrong_associator(const Shape& a, const Shape& b, const Shape& c);

MapRef left_unitor(const Shape& a);    // I^A -> A
MapRef right_unitor(const Shape& a);   // A^I -> A
MapRef left_unitor_inverse(const Shape& a);
MapRef right_unitor_inverse(const Shape& a);

// A point-constructor pattern and the path assigned to it.
struct PointPath {
  Term pattern;
  PathExpr path;
};

struct DiagramSides {
  std::string name;
  MapRef lhs;
  MapRef rhs;
  // Non-refl values of the pointwise homotopy lhs = rhs; points not covered
  // here get refl.
  std::vector<PointPath> witness;
  // Path from the all-basepoints point to the basepoint along which the
  // pointedness square is read; push_l steps when unset.
  std::optional<PathExpr> ladder;

  const Shape& domain() const { return lhs->domain(); }
  const Shape& codomain() const { return lhs->codomain(); }
};

using AssociatorFactory = std::function<MapRef(const Shape&, const Shape&, const Shape&)>;

// pentagon, hexagon, triangle, involution, naturality-alpha, naturality-beta,
// unit-naturality, unit-naturality-right, unitor-left, unitor-right,
// unitor-left-inverse, unitor-right-inverse. Throws UnknownDiagram.
DiagramSides diagram(const std::string& name, const AssociatorFactory& alpha = associator);
const std::vector<std::string>& diagram_names();

// Both sides as a DOT digraph; nodes are shapes, edges are stage names.
std::string to_dot(const DiagramSides& d);

}  // namespace smashkit
