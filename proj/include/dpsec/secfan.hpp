#pragma once

#include "dpsec/delpezzo.hpp"
#include "dpsec/disk.hpp"
#include "dpsec/polyhedral.hpp"

#include <map>
#include <string>
#include <vector>

namespace dp {

struct Chamber {
  Contraction contraction;
  RationalCone cone;
  std::vector<int> boundary_exc;  // {i : D_i in contraction}, sorted
  DiskTriangulation tri;
};

// Chambers of the Mori fan of Y, one per contraction, in contraction order.
std::vector<Chamber> chambers(const PicLattice& lat, const BoundaryCycle& b, int workers = 1, int cap = 6);
DiskTriangulation triangulation_of(const Chamber& c, const BoundaryCycle& b);

struct MovGroup {
  std::vector<int> key;          // boundary_exc shared by the members
  RationalCone cone;             // conic hull of the members
  std::vector<size_t> members;   // chamber ids
  DiskTriangulation tri;
};

// Groups chambers by boundary_exc and certifies each hull equals the union.
// Throws InvariantError if a group is not convex.
std::vector<MovGroup> movsec(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch);

// Partition of chamber ids by equal triangulation.
std::vector<std::vector<size_t>> grouping_by_triangulation(const std::vector<Chamber>& ch);
std::vector<std::vector<size_t>> grouping_by_boundary_exc(const std::vector<Chamber>& ch);
// Throws InvariantError if the two partitions differ.
void check_groupings_agree(const std::vector<Chamber>& ch);

struct BogusCone {
  RationalCone gamma;  // cone in the boundary of Eff
  RationalCone cone;   // gamma + R>=0 K
  size_t owner;        // index of the maximal cone gamma is a facet of
  std::vector<size_t> eff_facets;  // facets of Eff containing gamma
};

// Codimension-one faces of the given cones that lie in the boundary of Eff, coned with K.
std::vector<BogusCone> bogus_cones(const PicLattice& lat, const std::vector<RationalCone>& cones);

Fan mori_fan_K(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch);

struct SecondaryFan {
  std::vector<MovGroup> groups;
  std::vector<BogusCone> bogus;
  Fan full;  // groups first, then bogus cones
};

SecondaryFan secondary_fan(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch);

// Lazy grouping predicate: with no (-1)-class among the D_i every chamber has
// empty boundary_exc, so MovSec is the single cone Eff(Y). No enumeration.
bool movsec_is_single_cone(const PicLattice& lat, const BoundaryCycle& b);

// Cocycle C^P_{alpha beta} for chambers sharing a wall. Crossing from the chamber
// not contracting D_i to the one contracting it gives +min(a, coefficient of v_i) [D_i].
IntVec theta_cocycle(const PicLattice& lat, const BoundaryCycle& b, const GammaPoint& P, const Chamber& alpha,
                     const Chamber& beta);
// phi_alpha(P) = -sum_{i in boundary_exc} m_i(P) [D_i]
IntVec phi(const BoundaryCycle& b, const std::vector<int>& boundary_exc, const GammaPoint& P);

struct CocycleReport {
  size_t walls = 0, loops = 0, points = 0;
  bool antisymmetric = true, loops_close = true, boundary_vanishes = true, nef_nonnegative = true,
       wall_vanishes = true;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Full battery over every wall and every codimension-two loop of the chamber graph,
// for all Gamma points up to max_level.
CocycleReport cocycle_battery(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch,
                              long max_level);

struct WallBundle {
  size_t g1, g2;    // MovSec group ids
  IntVec cocycle;   // phi_{g1}(P) - phi_{g2}(P)
  Int degree;       // G.cocycle = degree * (primitive wall normal pointing into g1)
};

struct LineBundleData {
  GammaPoint P;
  std::vector<IntVec> phi;  // per group
  std::vector<WallBundle> walls;
  bool trivial = true;
};

LineBundleData theta_line_bundles(const PicLattice& lat, const BoundaryCycle& b, const SecondaryFan& sec,
                                  const GammaPoint& P);

struct StratumRecord {
  size_t c1, c2;        // maximal cones of Sec sharing the wall
  std::string data1, data2;
  bool changes = true;
};

// For every codimension-one cone of Sec: whether the combinatorial fiber data changes.
std::vector<StratumRecord> one_strata_report(const SecondaryFan& sec);

struct WeylReport {
  size_t group_order = 0;
  bool permutes_chambers = true;
  std::vector<size_t> chamber_orbit_sizes;  // sorted descending
  size_t stabilizer_order = 0;
  bool stabilizer_fixes_sec = true;
  std::vector<std::string> failures;
};

WeylReport weyl_equivariance(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch,
                             const SecondaryFan& sec, size_t limit = 60000);

}  // namespace dp
