#pragma once

// Independent reference computations for the tests. Plain machine integers and
// brute force only; nothing here calls into the library.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Cls = std::vector<long>;  // (d, m1, ..., mk) in the basis H, E1..Ek

// Classes with C^2 = -1 and -K.C = 1 by bounded search: d <= 6, -1 <= m_i <= 3
// (the largest (-1)-class at k = 8 is 6H - 3E1 - 2E2 - ... - 2E8).
inline std::vector<Cls> minus_one_classes(int k) {
  std::vector<Cls> out;
  for (long d = 0; d <= 6; ++d) {
    Cls c(k + 1, 0);
    c[0] = d;
    long want_sum = 3 * d - 1, want_sq = d * d + 1;
    std::function<void(int, long, long)> rec = [&](int i, long sum, long sq) {
      if (sq > want_sq) return;
      if (i == k + 1) {
        if (sum == want_sum && sq == want_sq) out.push_back(c);
        return;
      }
      for (long m = -1; m <= 3; ++m) {
        c[i] = m;
        rec(i + 1, sum + m, sq + m * m);
      }
      c[i] = 0;
    };
    rec(1, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline long dot(const Cls& a, const Cls& b) {
  long s = a[0] * b[0];
  for (size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

// Sets of pairwise disjoint (-1)-classes (the empty set included).
inline size_t disjoint_sets(const std::vector<Cls>& cs) {
  size_t count = 0;
  std::vector<size_t> chosen;
  std::function<void(size_t)> rec = [&](size_t from) {
    ++count;
    for (size_t i = from; i < cs.size(); ++i) {
      bool ok = true;
      for (size_t j : chosen)
        if (dot(cs[i], cs[j]) != 0) ok = false;
      if (!ok) continue;
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

// Level-m points of the cone over the disk by cells of the fan triangulation:
// the centre ray, n vertex rays, 2n open edges and n open triangles.
inline long umbrella_points(long n, long m) {
  if (m == 0) return 1;
  return 1 + n + 2 * n * (m - 1) + n * (m - 1) * (m - 2) / 2;
}

using P2 = std::array<long, 2>;

inline long cross(P2 o, P2 a, P2 b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

// Number of triangulations of a planar configuration (points may stay unused):
// sets of nondegenerate triangles with disjoint interiors covering the hull, face to face.
inline size_t triangulation_count(const std::vector<P2>& pts) {
  size_t N = pts.size();
  // twice the hull area via the gift-wrapped hull
  std::vector<P2> s = pts;
  std::sort(s.begin(), s.end());
  std::vector<P2> h;
  for (int pass = 0; pass < 2; ++pass) {
    size_t start = h.size();
    for (auto& p : s) {
      while (h.size() >= start + 2 && cross(h[h.size() - 2], h.back(), p) <= 0) h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(s.begin(), s.end());
  }
  long area2 = 0;
  for (size_t i = 0; i < h.size(); ++i) area2 += h[i][0] * h[(i + 1) % h.size()][1] - h[i][1] * h[(i + 1) % h.size()][0];
  area2 = std::labs(area2);
  struct Tri {
    std::array<size_t, 3> v;
    long a2;
  };
  std::vector<Tri> tris;
  for (size_t a = 0; a < N; ++a)
    for (size_t b = a + 1; b < N; ++b)
      for (size_t c = b + 1; c < N; ++c) {
        long x = std::labs(cross(pts[a], pts[b], pts[c]));
        if (x) tris.push_back({{a, b, c}, x});
      }
  // p strictly inside or on the boundary of t (not a vertex)
  auto touches = [&](const Tri& t, size_t p) {
    if (p == t.v[0] || p == t.v[1] || p == t.v[2]) return false;
    long d0 = cross(pts[t.v[0]], pts[t.v[1]], pts[p]);
    long d1 = cross(pts[t.v[1]], pts[t.v[2]], pts[p]);
    long d2 = cross(pts[t.v[2]], pts[t.v[0]], pts[p]);
    bool neg = d0 < 0 || d1 < 0 || d2 < 0, pos = d0 > 0 || d1 > 0 || d2 > 0;
    return !(neg && pos);
  };
  // two triangles overlap in area iff some separating axis test fails; use the edges
  auto overlap = [&](const Tri& x, const Tri& y) {
    for (const Tri* t : {&x, &y}) {
      const Tri* o = t == &x ? &y : &x;
      for (int e = 0; e < 3; ++e) {
        P2 p = pts[t->v[e]], q = pts[t->v[(e + 1) % 3]], r = pts[t->v[(e + 2) % 3]];
        long side = cross(p, q, r) > 0 ? 1 : -1;
        bool all_out = true;
        for (size_t w : o->v)
          if (side * cross(p, q, pts[w]) > 0) all_out = false;
        if (all_out) return false;
      }
    }
    return true;
  };
  size_t count = 0;
  std::vector<size_t> chosen;
  std::function<void(size_t, long)> rec = [&](size_t from, long covered) {
    if (covered == area2) {
      std::set<size_t> used;
      for (size_t i : chosen)
        for (size_t v : tris[i].v) used.insert(v);
      for (size_t i : chosen)
        for (size_t p : used)
          if (touches(tris[i], p)) return;
      ++count;
      return;
    }
    for (size_t i = from; i < tris.size(); ++i) {
      if (covered + tris[i].a2 > area2) continue;
      bool ok = true;
      for (size_t j : chosen)
        if (overlap(tris[i], tris[j])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(i);
      rec(i + 1, covered + tris[i].a2);
      chosen.pop_back();
    }
  };
  rec(0, 0);
  return count;
}

// Ray generators u_j of a toric surface from its self-intersections:
// u_0 = (1,0), u_1 = (0,1), u_{j-1} + u_{j+1} = -s_j u_j.
inline std::vector<P2> toric_rays(const std::vector<long>& s) {
  std::vector<P2> u{{1, 0}, {0, 1}};
  for (size_t j = 1; j + 1 < s.size(); ++j)
    u.push_back({-s[j] * u[j][0] - u[j - 1][0], -s[j] * u[j][1] - u[j - 1][1]});
  return u;
}

// Crossing multiplicities of the ray p + t D (t > 0, t < len if given) with each u_j, in
// the plane; p and D are in coordinates (u_j, u_{j+1}) of cone j. Rationals are avoided by
// scaling: p = (pa, pb) / den.
inline std::vector<long> toric_crossings(const std::vector<long>& s, int cone, long pa, long pb, long d0, long d1,
                                         long weight, std::optional<long> len_num = std::nullopt, long len_den = 1) {
  auto u = toric_rays(s);
  long n = long(s.size());
  P2 a = u[cone % n], b = u[(cone + 1) % n];
  P2 p{pa * a[0] + pb * b[0], pa * a[1] + pb * b[1]};
  P2 D{d0 * a[0] + d1 * b[0], d0 * a[1] + d1 * b[1]};
  std::vector<long> out(n, 0);
  for (long j = 0; j < n; ++j) {
    P2 w = u[j];
    // p + t D = r w  <=>  t (D x w) = -(p x w); r = (p x D) / (w x D)
    long dw = D[0] * w[1] - D[1] * w[0];
    if (dw == 0) continue;
    long pw = p[0] * w[1] - p[1] * w[0];
    long pd = p[0] * D[1] - p[1] * D[0];
    long wd = -dw;
    // t = -pw / dw > 0 and r = pd / wd > 0
    bool t_pos = (-pw > 0 && dw > 0) || (-pw < 0 && dw < 0);
    bool r_pos = (pd > 0 && wd > 0) || (pd < 0 && wd < 0);
    if (!t_pos || !r_pos) continue;
    if (len_num) {
      // t < len_num / len_den  <=>  -pw * len_den < len_num * dw (sign of dw)
      long lhs = -pw * len_den, rhs = *len_num * dw;
      if (dw > 0 ? !(lhs < rhs) : !(lhs > rhs)) continue;
    }
    out[j] += std::labs(dw) * weight;
  }
  return out;
}

}  // namespace oracle
