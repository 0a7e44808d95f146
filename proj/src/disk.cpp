#include "dpsec/disk.hpp"

#include <algorithm>
#include <set>

namespace dp {

namespace {

int mod(int x, int n) { return ((x % n) + n) % n; }

struct Rep {
  int cell;
  long a, b, b2;
};

// Every fan-chart representation of p.
std::vector<Rep> fan_reps(int n, const GammaPoint& p) {
  if (p.b > 0 && p.b2 > 0) return {{p.cell, p.a, p.b, p.b2}};
  if (p.b == 0 && p.b2 == 0) {
    std::vector<Rep> r;
    for (int j = 0; j < n; ++j) r.push_back({j, p.a, 0, 0});
    return r;
  }
  int j = p.b > 0 ? p.cell : mod(p.cell + 1, n);
  long t = p.b > 0 ? p.b : p.b2;
  return {{j, p.a, t, 0}, {mod(j - 1, n), p.a, 0, t}};
}

// Square chart of the flip at i: c=(0,0,1), v_{i-1}=(1,0,1), v_i=(1,1,1), v_{i+1}=(0,1,1).
std::array<long, 3> to_square(int n, int i, const Rep& r) {
  if (r.cell == mod(i - 1, n)) return {r.b + r.b2, r.b2, r.a + r.b + r.b2};
  return {r.b, r.b + r.b2, r.a + r.b + r.b2};
}

GammaPoint from_square(int n, int i, const std::array<long, 3>& s) {
  long x = s[0], y = s[1], z = s[2];
  if (x >= y) return canonical(n, {z - x, mod(i - 1, n), x - y, y});
  return canonical(n, {z - y, i, x, y - x});
}

}  // namespace

GammaPoint canonical(int n, GammaPoint p) {
  if (n < 1) throw ValidationError("cycle length must be positive");
  if (p.a < 0 || p.b < 0 || p.b2 < 0) throw ValidationError("negative Gamma coordinate");
  p.cell = mod(p.cell, n);
  if (p.b > 0 && p.b2 > 0) return p;
  if (p.b == 0 && p.b2 == 0) return {p.a, 0, 0, 0};
  int j = p.b > 0 ? p.cell : mod(p.cell + 1, n);
  long t = p.b > 0 ? p.b : p.b2;
  if (j == 0) return {p.a, 0, t, 0};
  return {p.a, j - 1, 0, t};
}

GammaPoint center_point(long a) { return {a, 0, 0, 0}; }

GammaPoint vertex_point(int n, int j, long t, long a) { return canonical(n, {a, j, t, 0}); }

bool on_boundary(const GammaPoint& p) { return p.a == 0; }

long vertex_coefficient(int n, const GammaPoint& p, int j) {
  j = mod(j, n);
  long best = 0;
  for (auto& r : fan_reps(n, p)) {
    if (r.cell == j) best = std::max(best, r.b);
    if (mod(r.cell + 1, n) == j) best = std::max(best, r.b2);
  }
  return best;
}

std::string to_string(const GammaPoint& p) {
  return "(" + std::to_string(p.a) + ";" + std::to_string(p.cell) + ":" + std::to_string(p.b) + "," +
         std::to_string(p.b2) + ")";
}

std::vector<GammaPoint> gamma_points(int n, long level) {
  if (level < 0) throw ValidationError("level must be nonnegative");
  std::set<GammaPoint> s;
  for (int j = 0; j < n; ++j)
    for (long b = 0; b <= level; ++b)
      for (long b2 = 0; b + b2 <= level; ++b2) s.insert(canonical(n, {level - b - b2, j, b, b2}));
  return {s.begin(), s.end()};
}

IntVec weight(int n, const GammaPoint& p) {
  IntVec w(1 + n);
  w[0] = p.a;
  w[1 + p.cell] += p.b;
  w[1 + mod(p.cell + 1, n)] += p.b2;
  return w;
}

std::string DiskTriangulation::describe() const {
  std::string s;
  for (auto& [u, v] : edges) {
    if (!s.empty()) s += " ";
    auto name = [](int x) { return x == 0 ? std::string("c") : "v" + std::to_string(x - 1); };
    s += name(u) + "-" + name(v);
  }
  return s;
}

DiskTriangulation make_triangulation(int n, std::vector<int> flips) {
  if (n < 1) throw ValidationError("cycle length must be positive");
  std::sort(flips.begin(), flips.end());
  flips.erase(std::unique(flips.begin(), flips.end()), flips.end());
  for (int i : flips)
    if (i < 0 || i >= n) throw ValidationError("flip index out of range");
  if (!flips.empty() && n < 3) throw ValidationError("flips need at least three boundary vertices");
  for (size_t x = 0; x < flips.size(); ++x)
    for (size_t y = x + 1; y < flips.size(); ++y) {
      int d = mod(flips[y] - flips[x], n);
      if (d == 1 || d == n - 1)
        throw ValidationError("flips at adjacent boundary vertices " + std::to_string(flips[x]) + " and " +
                              std::to_string(flips[y]));
    }
  DiskTriangulation t;
  t.n = n;
  t.flips = flips;
  auto v = [&](int j) { return 1 + mod(j, n); };
  std::vector<bool> used(n, false);
  for (int i : flips) used[mod(i - 1, n)] = used[i] = true;
  for (int j = 0; j < n; ++j) {
    if (used[j]) continue;
    t.cells.push_back({DiskTriangulation::Kind::Fan, j, {0, v(j), v(j + 1)}});
  }
  for (int i : flips) {
    t.cells.push_back({DiskTriangulation::Kind::A, i, {v(i - 1), v(i), v(i + 1)}});
    t.cells.push_back({DiskTriangulation::Kind::B, i, {0, v(i - 1), v(i + 1)}});
  }
  auto edge = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (int j = 0; j < n; ++j) t.edges.push_back(edge(v(j), v(j + 1)));
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(flips.begin(), flips.end(), j)) t.edges.push_back(edge(0, v(j)));
  for (int i : flips) t.edges.push_back(edge(v(i - 1), v(i + 1)));
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

std::vector<std::array<long, 3>> cell_coords(const DiskTriangulation& t, size_t c, const GammaPoint& p) {
  const auto& cell = t.cells.at(c);
  int n = t.n;
  std::vector<std::array<long, 3>> out;
  auto reps = fan_reps(n, p);
  if (cell.kind == DiskTriangulation::Kind::Fan) {
    for (auto& r : reps)
      if (r.cell == cell.idx) out.push_back({r.a, r.b, r.b2});
  } else {
    int i = cell.idx;
    std::set<std::array<long, 3>> sq;
    for (auto& r : reps)
      if (r.cell == mod(i - 1, n) || r.cell == i) sq.insert(to_square(n, i, r));
    for (auto& s : sq) {
      long x = s[0], y = s[1], z = s[2];
      std::array<long, 3> c3 = cell.kind == DiskTriangulation::Kind::A
                                   ? std::array<long, 3>{z - y, x + y - z, z - x}
                                   : std::array<long, 3>{z - x - y, x, y};
      if (c3[0] >= 0 && c3[1] >= 0 && c3[2] >= 0) out.push_back(c3);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GammaPoint from_cell_coords(const DiskTriangulation& t, size_t c, const std::array<long, 3>& x) {
  const auto& cell = t.cells.at(c);
  if (cell.kind == DiskTriangulation::Kind::Fan) return canonical(t.n, {x[0], cell.idx, x[1], x[2]});
  std::array<long, 3> s;
  if (cell.kind == DiskTriangulation::Kind::A) {
    // p v_{i-1} + q v_i + r v_{i+1}
    s = {x[0] + x[1], x[1] + x[2], x[0] + x[1] + x[2]};
  } else {
    // s c + p v_{i-1} + r v_{i+1}
    s = {x[1], x[2], x[0] + x[1] + x[2]};
  }
  return from_square(t.n, cell.idx, s);
}

std::optional<std::array<long, 3>> square_coords(int n, int i, const GammaPoint& p) {
  for (auto& r : fan_reps(n, p))
    if (r.cell == mod(i - 1, n) || r.cell == mod(i, n)) return to_square(n, i, r);
  return std::nullopt;
}

GammaPoint from_square_coords(int n, int i, const std::array<long, 3>& s) { return from_square(n, i, s); }

}  // namespace dp
