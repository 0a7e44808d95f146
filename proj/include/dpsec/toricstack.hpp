#pragma once

#include "dpsec/lattice.hpp"
#include "dpsec/polyhedral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dp {

// Delta and the subfan Delta' in N = Z^d (maximal cones), with a basis of the subgroup L.
struct BundleInput {
  Fan delta;
  Fan sub;
  std::vector<IntVec> L;
};

struct ConeSplit {
  size_t cone = 0;          // index into delta
  RationalCone sigma1;      // sigma meet L_R, in N coordinates
  RationalCone sigma2;      // face of sigma, a cone of Delta'
  bool in_sub = false;      // sigma itself is a cone of Delta', split as (0, sigma)
};

struct DecompositionCert {
  bool ok = true;
  std::vector<ConeSplit> splits;
  std::vector<RationalCone> delta_L;  // distinct sigma1, in N coordinates
  std::vector<std::string> failures;  // one line per offending cone
};

// sigma = sigma1 + sigma2 with sigma1 = sigma meet L_R and sigma2 the largest face whose
// span meets L_R only in 0. Cones of Delta' split as (0, sigma).
DecompositionCert decompose(const BundleInput& in, int workers = 1);

// Coordinates of v in the basis L (v must lie in L_R). Throws ValidationError otherwise.
RatVec l_coordinates(const std::vector<IntVec>& L, const IntVec& v);

// Fan of the cones sigma1 + sigma2 in L + N (coordinates: L first). Throws ValidationError
// if the certificate failed, InvariantError if some b-image is not the cone it came from.
Fan build_tilde(const BundleInput& in, const DecompositionCert& cert);

struct StabilizerEntry {
  size_t cone = 0;            // maximal cone of Delta carrying this stratum
  RationalCone tau1, tau2;    // face of sigma1 and face of sigma2
  TorsionGroup group;         // torsion of N / (N1 + N2)
  Int index;                  // [N : N1 + N2] when full rank, else 0
};

struct StabilizerReport {
  std::vector<StabilizerEntry> entries;  // one per distinct (tau1, tau2)
  size_t nontrivial = 0;
};

StabilizerReport stabilizers(const BundleInput& in, const DecompositionCert& cert);

// Exact sequence 0 -> L -> N -> Nbar -> 0 given by the rows of proj, with fans in L
// (coordinates in the basis L) and in Nbar.
struct QuotientData {
  IntMat proj;
  Fan delta_L;
  Fan delta_bar;
};

struct BundleCheck {
  bool ok = true;
  bool decomposes = true;  // the splitting hypothesis on every cone of Delta
  bool lifts = true;       // Delta' lifts delta_bar, sigma1 lies in delta_L (only with quotient data)
  std::vector<std::string> failures;
};

BundleCheck check_bundle(const BundleInput& in, const std::optional<QuotientData>& q = std::nullopt,
                         int workers = 1);

// A character chi of T_L (coordinates dual to the basis L) extends over TV(Delta_L, L)
// iff it is nonnegative on every sigma1.
bool character_extends(const std::vector<IntVec>& L, const DecompositionCert& cert, const IntVec& chi);

}  // namespace dp
