#pragma once

#include "dpsec/lattice.hpp"
#include "dpsec/polyhedral.hpp"

#include <string>
#include <vector>

namespace dp {

enum class Model { Blowup, Quadric };

// Pic of a del Pezzo surface. Blowup model: basis (H, E1..Ek), a class
// dH + c1 E1 + ... is stored as (d, c1, ..., ck). Quadric model: basis (f1, f2).
struct PicLattice {
  int k = 0;
  Model model = Model::Blowup;
  BilinearForm form{IntMat::identity(1)};
  IntVec canonical;

  static PicLattice blowup(int k);
  static PicLattice quadric();

  size_t rank() const { return canonical.size(); }
  int degree() const { return model == Model::Quadric ? 8 : 9 - k; }
  Int dot(const IntVec& x, const IntVec& y) const { return pair(form, x, y); }
  // Inequality vector g with g.x = C.x for all x.
  IntVec dual(const IntVec& c) const { return form.gram * c; }
  std::vector<std::string> basis_labels() const;
  std::string name() const;
  std::string class_name(const IntVec& c) const;  // e.g. "H-E1-E2"
  bool operator==(const PicLattice& o) const { return k == o.k && model == o.model; }
};

struct Contraction {
  std::vector<IntVec> classes;  // sorted
  bool operator==(const Contraction&) const = default;
};

struct BoundaryCycle {
  std::vector<IntVec> classes;  // cyclic order
  size_t n() const { return classes.size(); }
};

struct BoundaryReport {
  bool valid = true;
  std::vector<std::string> diagnostics;
  std::vector<bool> minus_one;  // D_i is a (-1)-class
  std::vector<Int> selfint;
};

struct WeylElement {
  IntMat matrix;  // acts on column vectors
};

std::vector<IntVec> minus_one_classes(const PicLattice& lat);
std::vector<IntVec> roots(const PicLattice& lat);
// Generators of NE(Y) (= Eff(Y) for del Pezzo surfaces).
std::vector<IntVec> ne_generators(const PicLattice& lat);
RationalCone effective_cone(const PicLattice& lat);
RationalCone nef_cone(const PicLattice& lat);
// All cliques of the orthogonality graph on (-1)-classes, empty set included.
// Throws ValidationError above the cap; use the lazy predicates instead.
std::vector<Contraction> contractions(const PicLattice& lat, int cap = 6);
RationalCone mori_chamber(const PicLattice& lat, const Contraction& c);

std::vector<IntVec> simple_roots(const PicLattice& lat);
std::vector<WeylElement> weyl_generators(const PicLattice& lat);
IntVec act(const WeylElement& w, const IntVec& v);
// Whole group by closure under generators. Throws ValidationError past `limit` elements.
std::vector<WeylElement> weyl_group(const PicLattice& lat, size_t limit = 60000);

BoundaryReport validate_boundary(const PicLattice& lat, const BoundaryCycle& b);
void require_valid(const PicLattice& lat, const BoundaryCycle& b);  // throws ValidationError

// Cycles of (-1)-classes with consecutive products 1 and others 0 summing to -K,
// one representative per dihedral class.
std::vector<BoundaryCycle> minus_one_cycles(const PicLattice& lat);
// Distinct images of b under the Weyl group (rotation-canonical representatives).
std::vector<BoundaryCycle> weyl_images(const PicLattice& lat, const BoundaryCycle& b, size_t limit = 4000);
// Lexicographically least rotation.
BoundaryCycle canonical_rotation(const BoundaryCycle& b);

struct NamedBoundary {
  std::string name;
  PicLattice lat;
  BoundaryCycle cycle;
  bool toric = false;
};
// Built-in configurations: the five toric pairs plus boundaries without (-1)-components.
std::vector<NamedBoundary> standard_boundaries();
NamedBoundary standard_boundary(const std::string& name);  // throws ValidationError

}  // namespace dp
