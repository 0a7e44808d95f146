#pragma once

#include "dpsec/delpezzo.hpp"
#include "dpsec/disk.hpp"

#include <map>
#include <string>
#include <vector>

namespace dp {

// Finite sum of z^gamma theta_P with integer coefficients. The zero class is stored as an empty vector.
struct ThetaElement {
  std::map<std::pair<GammaPoint, IntVec>, Int> terms;

  void add(const GammaPoint& p, const IntVec& gamma, const Int& c);
  bool is_zero() const { return terms.empty(); }
  Int coefficient(const GammaPoint& p, const IntVec& gamma = {}) const;
  // Drops every term with a nonzero curve class.
  ThetaElement at_z_zero() const;
  std::string to_string() const;
  bool operator==(const ThetaElement&) const = default;
};

ThetaElement operator*(const Int& c, const ThetaElement& x);
ThetaElement operator+(const ThetaElement& x, const ThetaElement& y);

// Product in the umbrella ring of the triangulation: sum over cells and over preimage
// representations of theta_{P'+Q'}. Throws InvariantError when the summed basis is not closed.
ThetaElement central_product(const GammaPoint& p, const GammaPoint& q, const DiskTriangulation& t);
// Linear extension of central_product.
ThetaElement central_product(const ThetaElement& x, const ThetaElement& y, const DiskTriangulation& t);

struct UmbrellaRing {
  DiskTriangulation tri;
  int max_level = 0;
  std::vector<GammaPoint> basis;  // all points up to max_level
  std::map<std::pair<size_t, size_t>, ThetaElement> table;  // i <= j, level(i) + level(j) <= max_level
};

// Builds the multiplication table up to the given total level; closure is checked on every product.
UmbrellaRing umbrella_ring(const DiskTriangulation& t, int max_level, int workers = 1);

// Points of level m found cell by cell from the triangulation (independent of gamma_points).
std::vector<GammaPoint> gamma_points_by_cells(const DiskTriangulation& t, long m);

size_t hilbert(int n, long m);
// Twice the leading coefficient of the exact quadratic through the sampled Hilbert values.
// Throws ValidationError with fewer than three levels; InvariantError if the samples are not quadratic.
Int proj_degree(int n, long max_level = 6);

struct BoundaryAlgebra {
  int n = 0;
  long level = 0;
  std::vector<size_t> component_dims;  // per boundary edge v_j v_{j+1}
  size_t total = 0;                    // distinct boundary points of the level
  bool products_ok = true;             // theta_P theta_Q on the boundary = theta_{P+Q} on a shared edge, else 0
  std::vector<std::string> failures;
};

BoundaryAlgebra boundary_algebra(int n, long m);

struct ThetaDivisorReport {
  int n = 0;
  size_t nodes = 0, nodes_missed = 0;    // nodes where Theta is nonzero
  bool center_unique = false;            // exactly one level-1 theta nonvanishing at the cone point
  bool center_theta_nonzero = false;
  bool center_theta_prime_nonzero = false;  // Theta with the theta_[Y] summand dropped
  bool homomorphisms_ok = true;          // evaluations respect the level-1 products
  std::vector<std::string> failures;
};

// Evaluates Theta = sum over level-1 points at the torus-fixed points of the
// umbrella: each boundary vertex and the centre.
ThetaDivisorReport theta_divisor_checks(const DiskTriangulation& t);

// Product on the stratum of the flop at D_i: pairs inside the square
// (c, v_{i-1}, v_i, v_{i+1}) multiply by the Mumford exponent rule in the square chart,
// every other level-1 pair by the central rule. Throws ValidationError unless D_i^2 = -1,
// n >= 4 and both points are of level 1.
ThetaElement flop_stratum_product(const PicLattice& lat, const BoundaryCycle& b, const GammaPoint& p,
                                  const GammaPoint& q, int i);

}  // namespace dp
