#pragma once

// Square obligations for equalities of maps out of iterated smash products,
// and the homotopy transfer from the approximation ~^ to the real smash.

#include <optional>
#include <string>
#include <vector>

#include "smashkit/normalizer.hpp"
#include "smashkit/structure_maps.hpp"

namespace smashkit {

struct Homotopy {
  MapRef f;
  MapRef g;
  std::vector<PointPath> points;  // first match wins; unmatched points get refl
  std::optional<PathExpr> base;   // f(*) = g(*)
  std::optional<PathExpr> ladder; // see DiagramSides::ladder

  // h(x) : f x = g x. Throws NonConstructorInput for a non-constructor x.
  PathExpr at(const Term& x) const;
  PathExpr at_base() const;

  static Homotopy refl(MapRef f, MapRef g);
  static Homotopy of(const DiagramSides& d);
};

struct Obligation {
  std::string tag;                // e.g. L17-iv
  std::vector<std::string> vars;  // quantified variables, with unit instances as i=o
  Square square;
  std::string error;              // set when the square could not be built
};

// Leaves of a left-nested shape ((A^B)^C)^...; nullopt for other shapes.
std::optional<std::vector<Shape>> left_nested_leaves(const Shape& s);
Shape left_nested(const std::vector<Shape>& leaves);
Term left_nested_point(const std::vector<Term>& coords);

// Columns of Definition-15 style transforms, as words.
NormalWord L_transform(const Homotopy& h, const Term& a);
NormalWord R_transform(const Homotopy& h, const Term& b);

std::vector<Obligation> obligations_binary(const Homotopy& h);
std::vector<Obligation> obligations_triple(const Homotopy& h);
std::vector<Obligation> obligations_quadruple(const Homotopy& h);
// Left-nested shapes of any length: two squares per smash level plus the
// pointwise typing square.
std::vector<Obligation> obligations_nfold(const Homotopy& h);
Obligation pointedness_obligation(const Homotopy& h);
// Ladder of push_l letters from the all-basepoints point to the basepoint.
PathExpr basepoint_ladder(const Shape& s);

// Picks the family generator by domain shape: leaf, binary, triple,
// quadruple, longer left-nested. Adds the pointedness square when `pointed`.
std::vector<Obligation> obligations_for(const Homotopy& h, bool pointed = true);
std::size_t family_count(const std::vector<Obligation>& obs);

struct ObligationReport {
  std::string tag;
  std::vector<std::string> vars;
  bool fillable = false;
  NormalWord lhs_word;
  NormalWord rhs_word;
  std::string error;  // evaluation failure, if any
};

struct DischargeReport {
  std::vector<ObligationReport> entries;  // sorted by tag
  bool ok() const;
  const ObligationReport* first_failure() const;
};

DischargeReport discharge(const std::vector<Obligation>& obs);

// ---------------------------------------------------------------------------
// Approximation ~^ of the n-fold smash (leaves A_0..A_n).

// An element of FS_n: the tuple with a unit in position `slot`.
struct FsElem {
  int slot = 0;
  std::vector<Term> coords;  // n+1 entries; coords[slot] is ignored
};

class FsShape {
 public:
  explicit FsShape(std::vector<Shape> leaves);

  int n() const { return static_cast<int>(leaves_.size()) - 1; }
  const std::vector<Shape>& leaves() const { return leaves_; }
  Shape smash_shape() const { return left_nested(leaves_); }

  // |FS_n| by the recursive definition.
  static std::size_t fs_size(const std::vector<std::size_t>& sizes);
  // One element per slot, with generic coordinates.
  std::vector<FsElem> generic_elements() const;
  // gamma_n: the tuple with the basepoint at `slot`.
  std::vector<Term> gamma(const FsElem& x) const;
  // Restriction of x (slot < n) to FS_{n-1}.
  FsElem drop_last(const FsElem& x) const;

 private:
  std::vector<Shape> leaves_;
};

// A point of ~^: the basepoint or a tuple.
struct FakePoint {
  bool base = false;
  std::vector<Term> coords;
};

Term iota(const FsShape& fs, const FakePoint& x);
// Image under iota of the path constructor attached to x in FS_n.
PathExpr iota_push(const FsShape& fs, const FsElem& x);
FakePoint lift_up(const FakePoint& x, const Term& an);
// up_coh(x, a_n) : iota(up(x, a_n)) = <iota(x), a_n>, as a path in the
// (n+1)-leaf smash. Throws NonConstructorInput unless x is a constructor.
PathExpr up_coh(const FsShape& fs_next, const FakePoint& x, const Term& an);

// A homotopy over ~^: values on the two point constructors plus, for every
// push constructor, a boundary claimed refl-fillable.
struct FakeHomotopy {
  MapRef f;
  MapRef g;
  PathExpr base;
  std::vector<PointPath> points;
  std::vector<Square> squares;  // indexed by FsElem slot

  PathExpr at(const std::vector<Term>& coords) const;
  static FakeHomotopy refl(const FsShape& fs, MapRef f, MapRef g);
};

// The boundary the push square at `slot` must have.
Square expected_push_square(const FsShape& fs, const FakeHomotopy& pt, int slot);

struct BuildResult {
  Homotopy homotopy;
  std::vector<Obligation> checked;  // push squares and the (c)/(d) squares per level
};

// Throws ObligationFailed (message names the square and both words) when a
// supplied or derived square does not fill.
BuildResult build_homotopy(const FsShape& fs, const FakeHomotopy& pt);

}  // namespace smashkit
