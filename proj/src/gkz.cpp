#include "dpsec/gkz.hpp"

#include "dpsec/parallel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace dp {

namespace {

long cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::array<int, 3> normalize(int a, int b, int c, const std::vector<Point2>& p) {
  if (cross(p[a], p[b], p[c]) < 0) std::swap(b, c);
  while (a > b || a > c) {
    int t = a;
    a = b;
    b = c;
    c = t;
  }
  return {a, b, c};
}

bool in_closed_triangle(const std::vector<Point2>& p, const std::array<int, 3>& t, const Point2& q) {
  for (int e = 0; e < 3; ++e)
    if (cross(p[t[e]], p[t[(e + 1) % 3]], q) < 0) return false;
  return true;
}

// Separating-axis test on integer coordinates, triangles counterclockwise.
bool interiors_disjoint(const std::vector<Point2>& p, const std::array<int, 3>& s, const std::array<int, 3>& t) {
  auto separates = [&](const std::array<int, 3>& a, const std::array<int, 3>& b) {
    for (int e = 0; e < 3; ++e) {
      bool all = true;
      for (int v : b)
        if (cross(p[a[e]], p[a[(e + 1) % 3]], p[v]) > 0) all = false;
      if (all) return true;
    }
    return false;
  };
  return separates(s, t) || separates(t, s);
}

// Counterclockwise hull vertices. Rejects duplicates and non-vertex boundary points.
std::vector<int> hull(const std::vector<Point2>& p) {
  if (p.size() < 3 || p.size() > 12) throw ValidationError("GKZ configurations need 3 to 12 points");
  std::vector<int> idx(p.size());
  for (size_t i = 0; i < p.size(); ++i) idx[i] = int(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return p[a] < p[b]; });
  for (size_t i = 1; i < idx.size(); ++i)
    if (p[idx[i]] == p[idx[i - 1]]) throw ValidationError("duplicate point in configuration");
  std::vector<int> h(2 * idx.size());
  size_t k = 0;
  for (size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross(p[h[k - 2]], p[h[k - 1]], p[idx[i]]) <= 0) --k;
    h[k++] = idx[i];
  }
  for (size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(p[h[k - 2]], p[h[k - 1]], p[idx[i]]) <= 0) --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw ValidationError("configuration is collinear");
  for (size_t i = 0; i < p.size(); ++i) {
    if (std::find(h.begin(), h.end(), int(i)) != h.end()) continue;
    for (size_t e = 0; e < h.size(); ++e)
      if (cross(p[h[e]], p[h[(e + 1) % h.size()]], p[i]) == 0)
        throw ValidationError("boundary point that is not a hull vertex");
  }
  return h;
}

long twice_area(const std::vector<Point2>& p, const std::vector<int>& h) {
  long s = 0;
  for (size_t i = 1; i + 1 < h.size(); ++i) s += cross(p[h[0]], p[h[i]], p[h[i + 1]]);
  return s;
}

// Coefficients c with c.w = det[(p_j-p_i, w_j-w_i); (p_k-p_i, ...); (p_l-p_i, ...)],
// oriented so that c.w >= 0 means l lies weakly above the plane through i, j, k.
IntVec lift_functional(const std::vector<Point2>& p, const std::array<int, 3>& t, int l) {
  IntVec c(p.size());
  int i = t[0], j = t[1], k = t[2];
  auto d = [&](int a, int b) { return std::array<long, 2>{p[a][0] - p[b][0], p[a][1] - p[b][1]}; };
  auto dj = d(j, i), dk = d(k, i), dl = d(l, i);
  // expansion along the height column
  long mj = dk[0] * dl[1] - dk[1] * dl[0];
  long mk = -(dj[0] * dl[1] - dj[1] * dl[0]);
  long ml = dj[0] * dk[1] - dj[1] * dk[0];
  c[j] += mj;
  c[k] += mk;
  c[l] += ml;
  c[i] -= mj + mk + ml;
  if (ml < 0) c = neg(c);
  return c;
}

void search(const std::vector<Point2>& p, std::set<std::pair<int, int>>& front,
            std::vector<std::array<int, 3>>& tris, std::vector<bool>& used, std::vector<Triangulation>& out) {
  if (front.empty()) {
    Triangulation t;
    for (auto& x : tris) t.triangles.push_back(normalize(x[0], x[1], x[2], p));
    std::sort(t.triangles.begin(), t.triangles.end());
    out.push_back(std::move(t));
    return;
  }
  auto [a, b] = *front.begin();
  for (int w = 0; w < int(p.size()); ++w) {
    if (cross(p[a], p[b], p[w]) <= 0) continue;
    std::array<int, 3> t{a, b, w};
    bool ok = true;
    for (auto& s : tris)
      if (!interiors_disjoint(p, s, t)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int v = 0; v < int(p.size()) && ok; ++v)
      if (used[v] && v != a && v != b && v != w && in_closed_triangle(p, t, p[v])) ok = false;
    if (!used[w])
      for (auto& s : tris)
        if (in_closed_triangle(p, s, p[w])) ok = false;
    if (!ok) continue;
    auto saved = front;
    bool was = used[w];
    front.erase({a, b});
    for (auto e : {std::pair{b, w}, std::pair{w, a}}) {
      if (front.count(e))
        front.erase(e);
      else
        front.insert({e.second, e.first});
    }
    used[w] = true;
    tris.push_back(t);
    search(p, front, tris, used, out);
    tris.pop_back();
    used[w] = was;
    front = std::move(saved);
  }
}

std::array<int, 3> pinned(const std::vector<Point2>& p) {
  auto h = hull(p);
  return {h[0], h[1], h[2]};
}

// Secondary cone with the pinned coordinates removed.
RationalCone reduced_cone(const std::vector<Point2>& p, const Triangulation& t, const std::array<int, 3>& fixed) {
  auto full = secondary_cone(p, t);
  std::vector<IntVec> ineqs;
  for (auto& f : full.facets) {
    IntVec g;
    for (size_t i = 0; i < p.size(); ++i)
      if (std::find(fixed.begin(), fixed.end(), int(i)) == fixed.end()) g.push_back(f[i]);
    ineqs.push_back(g);
  }
  return cone_from_inequalities(p.size() - 3, ineqs);
}

IntVec expand(const IntVec& w, size_t n, const std::array<int, 3>& fixed) {
  IntVec out(n);
  size_t j = 0;
  for (size_t i = 0; i < n; ++i)
    if (std::find(fixed.begin(), fixed.end(), int(i)) == fixed.end()) out[i] = w[j++];
  return out;
}

GkzFan assemble(const std::vector<Point2>& p, std::vector<Triangulation> ts, std::vector<Triangulation> irregular,
                std::vector<RationalCone> cones) {
  GkzFan g;
  g.points = p;
  g.fixed = pinned(p);
  std::vector<size_t> order(ts.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ts[a] < ts[b]; });
  g.fan.ambient = p.size() - 3;
  for (size_t i : order) {
    g.triangulations.push_back(ts[i]);
    g.fan.add(cones[i], ts[i].describe(), "regular triangulation");
  }
  std::sort(irregular.begin(), irregular.end());
  g.irregular = std::move(irregular);
  return g;
}

}  // namespace

std::vector<int> Triangulation::used_points() const {
  std::set<int> s;
  for (auto& t : triangles) s.insert(t.begin(), t.end());
  return {s.begin(), s.end()};
}

std::string Triangulation::describe() const {
  std::string s;
  for (auto& t : triangles) {
    if (!s.empty()) s += " ";
    s += std::to_string(t[0]) + "-" + std::to_string(t[1]) + "-" + std::to_string(t[2]);
  }
  return s;
}

std::vector<Triangulation> all_triangulations(const std::vector<Point2>& pts) {
  auto h = hull(pts);
  std::set<std::pair<int, int>> front;
  std::vector<bool> used(pts.size(), false);
  for (size_t i = 0; i < h.size(); ++i) {
    front.insert({h[i], h[(i + 1) % h.size()]});
    used[h[i]] = true;
  }
  std::vector<std::array<int, 3>> tris;
  std::vector<Triangulation> out;
  search(pts, front, tris, used, out);
  long area = twice_area(pts, h);
  std::erase_if(out, [&](const Triangulation& t) {
    long s = 0;
    for (auto& x : t.triangles) s += cross(pts[x[0]], pts[x[1]], pts[x[2]]);
    return s != area;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RationalCone secondary_cone(const std::vector<Point2>& pts, const Triangulation& t) {
  std::vector<IntVec> ineqs;
  for (auto& tri : t.triangles)
    for (int l = 0; l < int(pts.size()); ++l)
      if (l != tri[0] && l != tri[1] && l != tri[2]) ineqs.push_back(lift_functional(pts, tri, l));
  return cone_from_inequalities(pts.size(), ineqs);
}

bool is_regular(const std::vector<Point2>& pts, const Triangulation& t) {
  return secondary_cone(pts, t).dim == pts.size();
}

std::optional<Triangulation> regular_triangulation(const std::vector<Point2>& pts, const IntVec& w) {
  auto h = hull(pts);
  Triangulation t;
  long s = 0;
  int n = int(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (cross(pts[i], pts[j], pts[k]) == 0) continue;
        auto tri = normalize(i, j, k, pts);
        bool lower = true, tie = false;
        for (int l = 0; l < n && lower; ++l) {
          if (l == i || l == j || l == k) continue;
          Int v = dot(lift_functional(pts, tri, l), w);
          if (v == 0) tie = true;
          if (v < 0) lower = false;
        }
        if (lower && tie) return std::nullopt;
        if (lower) {
          t.triangles.push_back(tri);
          s += cross(pts[tri[0]], pts[tri[1]], pts[tri[2]]);
        }
      }
  if (s != twice_area(pts, h)) return std::nullopt;
  std::sort(t.triangles.begin(), t.triangles.end());
  return t;
}

GkzFan gkz_secondary_fan(const std::vector<Point2>& pts, int workers) {
  auto fixed = pinned(pts);
  size_t N = pts.size();
  std::mt19937_64 gen(20240611);
  std::optional<Triangulation> start;
  for (int attempt = 0; attempt < 64 && !start; ++attempt) {
    IntVec w(N);
    for (size_t i = 0; i < N; ++i)
      w[i] = Int(pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1]) * 1000000 + Int(long(gen() % 1000));
    start = regular_triangulation(pts, w);
  }
  if (!start) throw InvariantError("no generic lift found for the starting triangulation");

  std::map<Triangulation, size_t> id{{*start, 0}};
  std::vector<Triangulation> ts{*start};
  std::vector<RationalCone> cones{reduced_cone(pts, *start, fixed)};
  std::vector<size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::vector<Triangulation>> found(frontier.size());
    parallel_for(frontier.size(), workers, [&](size_t f) {
      const RationalCone& c = cones[frontier[f]];
      for (auto& fn : c.facets) {
        IntVec mid(N - 3);
        for (auto& r : c.rays)
          if (dot(fn, r) == 0) mid = add(mid, r);
        std::optional<Triangulation> nb;
        for (long t = 1; t < (1L << 40) && !nb; t *= 2) {
          IntVec w = sub(scale(Int(t), mid), fn);
          auto cand = regular_triangulation(pts, expand(w, N, fixed));
          if (cand && *cand != ts[frontier[f]] && reduced_cone(pts, *cand, fixed).contains(mid)) nb = cand;
        }
        if (!nb) throw InvariantError("flip across a secondary wall not found");
        found[f].push_back(*nb);
      }
    });
    std::vector<size_t> next;
    for (auto& fs : found)
      for (auto& t : fs)
        if (!id.count(t)) {
          id[t] = ts.size();
          next.push_back(ts.size());
          ts.push_back(t);
          cones.push_back(reduced_cone(pts, t, fixed));
        }
    frontier = std::move(next);
  }
  return assemble(pts, std::move(ts), {}, std::move(cones));
}

GkzFan gkz_bruteforce(const std::vector<Point2>& pts) {
  auto fixed = pinned(pts);
  std::vector<Triangulation> reg, irr;
  std::vector<RationalCone> cones;
  for (auto& t : all_triangulations(pts)) {
    if (is_regular(pts, t)) {
      reg.push_back(t);
      cones.push_back(reduced_cone(pts, t, fixed));
    } else {
      irr.push_back(t);
    }
  }
  return assemble(pts, std::move(reg), std::move(irr), std::move(cones));
}

std::vector<Point2> toric_polygon(const PicLattice& lat, const BoundaryCycle& b) {
  require_valid(lat, b);
  size_t n = b.n();
  if (n < 3) throw ValidationError("toric boundaries have at least three components");
  std::vector<long> s;
  for (auto& d : b.classes) s.push_back(lat.dot(d, d).get_si());
  std::vector<Point2> u{{1, 0}, {0, 1}};
  for (size_t i = 1; i <= n; ++i) {
    Point2 next{-s[i % n] * u[i][0] - u[i - 1][0], -s[i % n] * u[i][1] - u[i - 1][1]};
    u.push_back(next);
  }
  if (u[n] != u[0] || u[n + 1] != u[1]) throw ValidationError("self-intersection sequence is not toric");
  std::vector<Point2> pts{{0, 0}};
  for (size_t i = 0; i < n; ++i) pts.push_back(u[i]);
  return pts;
}

CompareCert toric_compare(const PicLattice& lat, const BoundaryCycle& b, const GkzFan& gkz,
                          const SecondaryFan& sec) {
  CompareCert c;
  auto pts = toric_polygon(lat, b);
  if (pts != gkz.points) throw ValidationError("GKZ fan was computed for a different configuration");
  size_t N = pts.size(), r = lat.rank();
  std::vector<IntVec> phi{lat.canonical};
  for (auto& d : b.classes) phi.push_back(d);
  auto apply = [&](const IntVec& w) {
    IntVec out(r);
    for (size_t i = 0; i < N; ++i)
      if (w[i] != 0) out = add(out, scale(w[i], phi[i]));
    return out;
  };
  c.rank_identity = N - 3 == r;
  IntVec one(N), xs(N), ys(N);
  for (size_t i = 0; i < N; ++i) {
    one[i] = 1;
    xs[i] = pts[i][0];
    ys[i] = pts[i][1];
  }
  c.kernel_is_affine = rank_of(phi, r) == r && is_zero(apply(one)) && is_zero(apply(xs)) && is_zero(apply(ys));
  if (!c.kernel_is_affine) c.diagnostics.push_back("kernel of the divisor map is not the affine functions");
  if (!c.rank_identity) c.diagnostics.push_back("point count minus three differs from the Picard rank");

  std::map<std::vector<IntVec>, size_t> sec_id;
  for (size_t i = 0; i < sec.full.size(); ++i) sec_id[sec.full.cones[i].rays] = i;
  c.gkz_cones = gkz.fan.size();
  c.sec_cones = sec.full.size();
  std::vector<bool> hit(sec.full.size(), false);
  bool ok = c.kernel_is_affine && c.rank_identity;
  for (size_t i = 0; i < gkz.fan.size(); ++i) {
    std::vector<IntVec> img;
    for (auto& ray : gkz.fan.cones[i].rays) img.push_back(primitive(apply(expand(ray, N, gkz.fixed))));
    auto cone = cone_from_rays(img, {}, r);
    auto it = sec_id.find(cone.rays);
    if (it == sec_id.end() || !(sec.full.cones[it->second] == cone)) {
      ok = false;
      c.match.push_back(size_t(-1));
      c.diagnostics.push_back("triangulation " + gkz.triangulations[i].describe() + " has no Sec counterpart");
      continue;
    }
    if (hit[it->second]) {
      ok = false;
      c.diagnostics.push_back("Sec cone " + std::to_string(it->second) + " matched twice");
    }
    hit[it->second] = true;
    c.match.push_back(it->second);
  }
  for (size_t j = 0; j < hit.size(); ++j)
    if (!hit[j]) {
      ok = false;
      c.diagnostics.push_back("Sec cone " + std::to_string(j) + " (" + sec.full.labels[j] + ") not reached");
    }
  c.f_gkz = f_vector(gkz.fan);
  c.f_sec = f_vector(sec.full);
  if (c.f_gkz != c.f_sec) {
    ok = false;
    c.diagnostics.push_back("f-vectors differ");
  }
  c.certified = ok;
  return c;
}

}  // namespace dp
