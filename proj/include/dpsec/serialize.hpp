#pragma once

#include "dpsec/delpezzo.hpp"
#include "dpsec/disk.hpp"
#include "dpsec/polyhedral.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dp {

const char* library_version();

std::uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);  // 16 lowercase hex digits

nlohmann::json intvec_json(const IntVec& v);  // array of decimal strings
IntVec intvec_from_json(const nlohmann::json& j);  // strings or integers; throws ValidationError

// { ambient_rank, cones: [ { rays, lineality, facets, label, provenance } ], metadata }
// Keys are sorted and cones are emitted in canonical order.
std::string fan_to_json(const Fan& f, const nlohmann::json& metadata = nlohmann::json::object());
Fan fan_from_json(const std::string& text, nlohmann::json* metadata = nullptr);

// Adjacency graph of maximal cones; nodes with equal colour keys share a fill colour.
std::string fan_dot(const Fan& f, const std::vector<std::string>& colour_keys, const std::string& graph_name);

// One row per theta basis element of the level: the products theta_P theta_Q (levels summing
// to `level`, P <= Q) in which it appears, with coefficients.
std::string theta_table_csv(const DiskTriangulation& t, long level, int workers = 1);

struct BoundaryInput {
  std::string name;  // standard name, or "custom"
  PicLattice lat;
  BoundaryCycle cycle;
};

// {"name": "dp6-hexagon"} or {"k": 3 | "degree": 6, "model": "blowup" | "quadric", "cycle": [[...], ...]}.
// Validates the cycle; throws ValidationError.
BoundaryInput boundary_from_json(const std::string& text);
BoundaryInput boundary_by_name(const std::string& name);
// Normalized echo: lexicographically least rotation, decimal strings.
nlohmann::json boundary_to_json(const BoundaryInput& b);
// Bytes hashed for cache keys and reports: model, k and the least rotation of the cycle.
std::string canonical_input(const PicLattice& lat, const BoundaryCycle& b);

}  // namespace dp
