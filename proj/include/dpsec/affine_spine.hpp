#pragma once

#include "dpsec/disk.hpp"
#include "dpsec/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dp {

// Integral-affine structure on Sk(U) minus the origin. Cone sigma_j is spanned
// by v_j, v_{j+1}; the chart across rho_j obeys v_{j-1} + v_{j+1} = -D_j^2 v_j.
struct AffineStructure {
  int n = 0;
  std::vector<long> selfint;  // D_j^2, cyclic
};

AffineStructure affine_structure(std::vector<long> selfint);

// Coordinates in (v_{i-1}, v_i) to coordinates in (v_i, v_{i+1}): (a, b) -> (b - s a, -a).
IntMat transition(const AffineStructure& aff, int i);
// M_{n-1} ... M_0: the chart of sigma_{n-1} carried once around the origin.
IntMat monodromy(const AffineStructure& aff);

struct Leg {
  IntVec dir;                 // in the chart of the vertex's cone, nonzero
  long weight = 1;
  std::optional<Rat> length;  // affine length in units of dir; nullopt = runs to infinity
};

struct SpineVertex {
  int cone = 0;
  Rat alpha, beta;        // position alpha v_cone + beta v_{cone+1}, both positive
  bool interior = true;   // balancing is required only at interior vertices
  std::vector<Leg> legs;
};

struct Spine {
  std::vector<SpineVertex> vertices;
};

struct Crossing {
  int ray;
  Int multiplicity;  // |dir ^ v_ray| times weight
  size_t vertex, leg;
};

// Throws ValidationError on a vertex on a ray, a leg through the origin, a finite
// leg ending on a ray, or a leg that does not escape.
std::vector<Crossing> crossings(const AffineStructure& aff, const Spine& s);
bool is_balanced(const AffineStructure& aff, const Spine& s);
// Coefficients of Z(h) on [D_0], ..., [D_{n-1}].
IntVec crossing_counts(const AffineStructure& aff, const Spine& s);
IntVec crossing_class(const AffineStructure& aff, const Spine& s, const std::vector<IntVec>& boundary_classes);
// 1 iff s is balanced and gamma (in D-coefficients) equals crossing_counts(s).
int count(const AffineStructure& aff, const Spine& s, const IntVec& gamma);

struct TwoLegOutput {
  GammaPoint q;  // output point of Sk(U, Z) (level-0 coordinate a = 0)
  IntVec z;      // D-coefficients of Z(h)
  Spine spine;   // one witness
  int multiplicity = 1;  // pairs of straight legs realising (q, z)
};

// Straight legs from v_a- and v_b-infinity ending at a generic point next to the
// output q, with developed directions summing to q. Outputs up to level 4, sorted by (q, z).
std::vector<TwoLegOutput> two_leg_outputs(const AffineStructure& aff, int a, int b);

std::string spine_to_json(const Spine& s);
Spine spine_from_json(const std::string& text);  // throws ValidationError

}  // namespace dp
