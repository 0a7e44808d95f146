#pragma once

#include "dpsec/delpezzo.hpp"
#include "dpsec/polyhedral.hpp"
#include "dpsec/secfan.hpp"

#include <array>
#include <string>
#include <vector>

namespace dp {

using Point2 = std::array<long, 2>;

// Triangulation of a planar point configuration by point indices. Triangles are
// stored counterclockwise starting at their smallest index, list sorted.
struct Triangulation {
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> used_points() const;
  std::string describe() const;
  auto operator<=>(const Triangulation&) const = default;
};

// Every triangulation (not necessarily using all points). Points must be
// distinct, at most 12, and every boundary point must be a vertex of the hull.
std::vector<Triangulation> all_triangulations(const std::vector<Point2>& pts);

// Heights w making t the lower-hull subdivision. Lives in R^N and contains the
// affine functions as lineality space.
RationalCone secondary_cone(const std::vector<Point2>& pts, const Triangulation& t);
bool is_regular(const std::vector<Point2>& pts, const Triangulation& t);
// Lower-hull triangulation for generic heights; nullopt when w is not generic.
std::optional<Triangulation> regular_triangulation(const std::vector<Point2>& pts, const IntVec& w);

struct GkzFan {
  std::vector<Point2> points;
  std::vector<Triangulation> triangulations;  // regular ones, sorted; fan.cones[i] belongs to triangulations[i]
  std::vector<Triangulation> irregular;       // brute-force enumerator only
  std::array<int, 3> fixed{};                 // heights pinned to 0 to quotient by affine functions
  Fan fan;                                    // in R^{N-3}
};

// Flip-graph search over secondary cones, starting from a perturbed Delaunay lift.
GkzFan gkz_secondary_fan(const std::vector<Point2>& pts, int workers = 1);
// Exhaustive enumeration of subdivisions plus a regularity test for each.
GkzFan gkz_bruteforce(const std::vector<Point2>& pts);

// Toric model of (Y, D): center first, then u_0..u_{n-1} with u_{i-1} + u_{i+1} = -D_i^2 u_i.
// Throws ValidationError if the sequence does not close up.
std::vector<Point2> toric_polygon(const PicLattice& lat, const BoundaryCycle& b);

struct CompareCert {
  bool certified = false;
  bool kernel_is_affine = false;
  bool rank_identity = false;  // #points - 3 == rank Pic
  size_t gkz_cones = 0, sec_cones = 0;
  std::vector<size_t> match;  // gkz cone i -> Sec cone match[i]
  std::vector<size_t> f_gkz, f_sec;
  std::vector<std::string> diagnostics;
};

// Pushes the GKZ fan through e_c -> K, e_{u_i} -> [D_i] and matches it cone by cone with Sec.
CompareCert toric_compare(const PicLattice& lat, const BoundaryCycle& b, const GkzFan& gkz,
                          const SecondaryFan& sec);

}  // namespace dp
