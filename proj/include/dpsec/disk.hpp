#pragma once

#include "dpsec/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace dp {

// Integer point of the cone complex over the disk, written in the fan chart:
// a*[Y] + b*v_cell + b2*v_{cell+1}. Canonical form puts a point lying on a
// shared face into the smallest incident fan cell.
struct GammaPoint {
  long a = 0;
  int cell = 0;
  long b = 0, b2 = 0;

  long level() const { return a + b + b2; }
  auto operator<=>(const GammaPoint&) const = default;
};

GammaPoint canonical(int n, GammaPoint p);
GammaPoint center_point(long a = 1);
GammaPoint vertex_point(int n, int j, long t = 1, long a = 0);
bool on_boundary(const GammaPoint& p);  // a == 0
// Coefficient of v_j in any fan-chart representation (0 if P is not in the star of v_j).
long vertex_coefficient(int n, const GammaPoint& p, int j);
std::string to_string(const GammaPoint& p);

// All points of the given level, sorted; count (n m^2 + n m + 2) / 2.
std::vector<GammaPoint> gamma_points(int n, long level);
// Coordinates in Z^{1+n}: index 0 is [Y], index 1+j is v_j.
IntVec weight(int n, const GammaPoint& p);

// Delta-complex triangulation of the disk with n boundary vertices and a centre.
// Vertex ids: 0 is the centre, 1+j is v_j. Starting from the fan triangulation,
// flipping at i replaces the cells (c, v_{i-1}, v_i), (c, v_i, v_{i+1}) by
// A_i = (v_{i-1}, v_i, v_{i+1}) and B_i = (c, v_{i-1}, v_{i+1}).
struct DiskTriangulation {
  enum class Kind { Fan, A, B };
  struct Cell {
    Kind kind;
    int idx;  // fan cell index or flip index
    std::array<int, 3> verts;
  };

  int n = 0;
  std::vector<int> flips;                  // sorted
  std::vector<Cell> cells;                 // n cells
  std::vector<std::pair<int, int>> edges;  // sorted multiset, boundary edges included

  bool operator==(const DiskTriangulation& o) const { return n == o.n && edges == o.edges; }
  std::string describe() const;
};

// Throws ValidationError if two flips are adjacent or n < 3 with a flip.
DiskTriangulation make_triangulation(int n, std::vector<int> flips = {});

// Representations of p inside cell c of t: coordinates on the cell's vertices,
// one per preimage in the unglued cell.
std::vector<std::array<long, 3>> cell_coords(const DiskTriangulation& t, size_t c, const GammaPoint& p);
GammaPoint from_cell_coords(const DiskTriangulation& t, size_t c, const std::array<long, 3>& x);

// Square chart of the flip at i: c = (0,0,1), v_{i-1} = (1,0,1), v_i = (1,1,1), v_{i+1} = (0,1,1).
// nullopt if p is outside the union of fan cells i-1 and i.
std::optional<std::array<long, 3>> square_coords(int n, int i, const GammaPoint& p);
GammaPoint from_square_coords(int n, int i, const std::array<long, 3>& s);

}  // namespace dp
