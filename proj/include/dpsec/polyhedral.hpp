#pragma once

#include "dpsec/lattice.hpp"

#include <string>
#include <vector>

namespace dp {

// Closed rational polyhedral cone in both descriptions. Rays are taken modulo
// the lineality space and projected onto its orthogonal complement; facets are
// inward normals projected into the linear span. Both lists are sorted, so two
// cones are equal iff their fields are equal.
struct RationalCone {
  size_t ambient = 0;
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;  // rref basis
  std::vector<IntVec> facets;
  std::vector<IntVec> equations;  // rref basis of the orthogonal complement of the span
  size_t dim = 0;

  bool pointed() const { return lineality.empty(); }
  bool full_dimensional() const { return dim == ambient; }
  bool contains(const IntVec& p) const;
  bool contains_cone(const RationalCone& o) const;
  bool in_relative_interior(const IntVec& p) const;
  IntVec interior_point() const;  // relative interior
  std::vector<IntVec> generators() const;  // rays plus +-lineality
  bool operator==(const RationalCone& o) const {
    return ambient == o.ambient && rays == o.rays && lineality == o.lineality;
  }
};

RationalCone cone_from_rays(const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality = {},
                            size_t ambient = 0);
RationalCone cone_from_inequalities(size_t ambient, const std::vector<IntVec>& ineqs,
                                    const std::vector<IntVec>& eqs = {});
RationalCone zero_cone(size_t ambient);
RationalCone dual_cone(const RationalCone& c);
RationalCone intersect(const RationalCone& a, const RationalCone& b);
RationalCone linear_image(const IntMat& m, const RationalCone& c);

// All faces of the given codimension (relative to c.dim).
std::vector<RationalCone> faces(const RationalCone& c, size_t codim);
// Faces as subsets of c.rays, grouped by dimension (index = dim).
std::vector<std::vector<std::vector<size_t>>> face_lattice(const RationalCone& c);
bool is_face(const RationalCone& f, const RationalCone& c);
// True iff a and b meet in a common face.
bool meet_in_common_face(const RationalCone& a, const RationalCone& b);

// Exact LP feasibility: p in the conic hull of gens (nonnegative rational combination).
bool in_conic_hull(const std::vector<IntVec>& gens, const IntVec& p);
// max c.x subject to A x = b, x >= 0. Returns nullopt if infeasible; unbounded gives value = +inf flag.
struct LPResult {
  bool feasible = false;
  bool unbounded = false;
  Rat value;
  RatVec x;
};
LPResult lp_maximize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c);

struct Fan {
  size_t ambient = 0;
  std::vector<RationalCone> cones;  // maximal cones
  std::vector<std::string> labels;
  std::vector<std::string> provenance;

  void add(RationalCone c, std::string label, std::string prov) {
    cones.push_back(std::move(c));
    labels.push_back(std::move(label));
    provenance.push_back(std::move(prov));
  }
  size_t size() const { return cones.size(); }
  // Sorts cones by their canonical ray lists so output is order independent.
  void canonicalize();
};

struct FanReport {
  bool is_fan = true;
  bool is_complete = false;
  std::vector<std::string> contracted_1_strata;
  std::vector<std::string> violations;
};

FanReport fan_check(const Fan& f, int workers = 1);
bool is_complete(const Fan& f, int probes = 64, unsigned long seed = 12345);
// Every cone of fine lies in a cone of coarse. Throws ValidationError if the supports differ.
bool is_coarsening(const Fan& coarse, const Fan& fine);
// Certificate that the union of the full-dimensional cones `members` equals `hull`:
// each facet of a member lies in the boundary of hull or in exactly one other member.
bool union_equals(const RationalCone& hull, const std::vector<RationalCone>& members,
                  std::string* why = nullptr);
// Number of distinct cones per dimension over all faces of the maximal cones.
std::vector<size_t> f_vector(const Fan& f);
// Pairs of maximal cones sharing a codimension-one face.
std::vector<std::pair<size_t, size_t>> adjacency(const Fan& f);

}  // namespace dp
