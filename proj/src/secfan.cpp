#include "dpsec/secfan.hpp"

#include "dpsec/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dp {

namespace {

std::string join(const std::vector<int>& xs) {
  std::string s = "{";
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::string classes_label(const PicLattice& lat, const std::vector<IntVec>& cs) {
  std::string s = "{";
  for (size_t i = 0; i < cs.size(); ++i) s += (i ? "," : "") + lat.class_name(cs[i]);
  return s + "}";
}

int boundary_index(const BoundaryCycle& b, const IntVec& c) {
  for (size_t i = 0; i < b.n(); ++i)
    if (b.classes[i] == c) return int(i);
  return -1;
}

std::vector<IntVec> common_rays(const RationalCone& a, const RationalCone& b) {
  std::vector<IntVec> out;
  std::set_intersection(a.rays.begin(), a.rays.end(), b.rays.begin(), b.rays.end(), std::back_inserter(out));
  return out;
}

bool share_wall(const RationalCone& a, const RationalCone& b) {
  auto c = common_rays(a, b);
  size_t r = c.empty() ? 0 : rank_of(c, a.ambient);
  return r + 1 == a.ambient;
}

}  // namespace

DiskTriangulation triangulation_of(const Chamber& c, const BoundaryCycle& b) {
  return make_triangulation(int(b.n()), c.boundary_exc);
}

std::vector<Chamber> chambers(const PicLattice& lat, const BoundaryCycle& b, int workers, int cap) {
  require_valid(lat, b);
  auto cs = contractions(lat, cap);
  std::vector<Chamber> out(cs.size());
  parallel_for(cs.size(), workers, [&](size_t i) {
    Chamber& ch = out[i];
    ch.contraction = cs[i];
    ch.cone = mori_chamber(lat, cs[i]);
    for (auto& f : cs[i].classes) {
      int j = boundary_index(b, f);
      if (j >= 0) ch.boundary_exc.push_back(j);
    }
    std::sort(ch.boundary_exc.begin(), ch.boundary_exc.end());
    int n = int(b.n());
    for (size_t x = 0; x < ch.boundary_exc.size(); ++x)
      for (size_t y = x + 1; y < ch.boundary_exc.size(); ++y) {
        int d = (ch.boundary_exc[y] - ch.boundary_exc[x]) % n;
        if (n >= 3 && (d == 1 || d == n - 1))
          throw InvariantError("orthogonal boundary classes at adjacent positions " + join(ch.boundary_exc));
      }
    ch.tri = triangulation_of(ch, b);
  });
  return out;
}

std::vector<MovGroup> movsec(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch) {
  (void)b;
  std::map<std::vector<int>, std::vector<size_t>> by_key;
  for (size_t i = 0; i < ch.size(); ++i) by_key[ch[i].boundary_exc].push_back(i);
  std::vector<MovGroup> out;
  for (auto& [key, members] : by_key) {
    MovGroup g;
    g.key = key;
    g.members = members;
    g.tri = ch[members[0]].tri;
    std::set<IntVec> rays;
    std::vector<RationalCone> cones;
    for (size_t m : members) {
      rays.insert(ch[m].cone.rays.begin(), ch[m].cone.rays.end());
      cones.push_back(ch[m].cone);
    }
    g.cone = cone_from_rays({rays.begin(), rays.end()}, {}, lat.rank());
    std::string why;
    if (!union_equals(g.cone, cones, &why))
      throw InvariantError("MovSec group " + join(key) + " is not convex: " + why);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

std::vector<std::vector<size_t>> partition_by(const std::vector<Chamber>& ch,
                                              const std::function<bool(const Chamber&, const Chamber&)>& same) {
  std::vector<std::vector<size_t>> parts;
  for (size_t i = 0; i < ch.size(); ++i) {
    bool placed = false;
    for (auto& p : parts)
      if (same(ch[p[0]], ch[i])) {
        p.push_back(i);
        placed = true;
        break;
      }
    if (!placed) parts.push_back({i});
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

}  // namespace

std::vector<std::vector<size_t>> grouping_by_triangulation(const std::vector<Chamber>& ch) {
  return partition_by(ch, [](const Chamber& x, const Chamber& y) { return x.tri == y.tri; });
}

std::vector<std::vector<size_t>> grouping_by_boundary_exc(const std::vector<Chamber>& ch) {
  return partition_by(ch, [](const Chamber& x, const Chamber& y) { return x.boundary_exc == y.boundary_exc; });
}

void check_groupings_agree(const std::vector<Chamber>& ch) {
  if (grouping_by_triangulation(ch) != grouping_by_boundary_exc(ch))
    throw InvariantError("triangulation grouping differs from boundary-exceptional grouping");
}

std::vector<BogusCone> bogus_cones(const PicLattice& lat, const std::vector<RationalCone>& cones) {
  RationalCone eff = effective_cone(lat);
  std::vector<BogusCone> out;
  std::set<std::vector<IntVec>> seen;
  for (size_t c = 0; c < cones.size(); ++c) {
    for (auto& fn : cones[c].facets) {
      std::vector<IntVec> F;
      for (auto& r : cones[c].rays)
        if (dot(fn, r) == 0) F.push_back(r);
      std::vector<size_t> on;
      for (size_t h = 0; h < eff.facets.size(); ++h) {
        bool all = true;
        for (auto& r : F)
          if (dot(eff.facets[h], r) != 0) {
            all = false;
            break;
          }
        if (all) on.push_back(h);
      }
      if (on.empty() || !seen.insert(F).second) continue;
      BogusCone bc;
      bc.gamma = F.empty() ? zero_cone(lat.rank()) : cone_from_rays(F, {}, lat.rank());
      std::vector<IntVec> G = F;
      G.push_back(lat.canonical);
      bc.cone = cone_from_rays(G, {}, lat.rank());
      bc.owner = c;
      bc.eff_facets = on;
      out.push_back(std::move(bc));
    }
  }
  return out;
}

Fan mori_fan_K(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch) {
  Fan f;
  f.ambient = lat.rank();
  std::vector<RationalCone> cones;
  for (auto& c : ch) {
    f.add(c.cone, "chamber " + classes_label(lat, c.contraction.classes), "mori-chamber bexc=" + join(c.boundary_exc));
    cones.push_back(c.cone);
  }
  (void)b;
  for (auto& bc : bogus_cones(lat, cones))
    f.add(bc.cone, "bogus over chamber " + std::to_string(bc.owner), "bogus gamma+K");
  return f;
}

SecondaryFan secondary_fan(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch) {
  SecondaryFan s;
  s.groups = movsec(lat, b, ch);
  std::vector<RationalCone> cones;
  for (auto& g : s.groups) cones.push_back(g.cone);
  s.bogus = bogus_cones(lat, cones);
  s.full.ambient = lat.rank();
  for (auto& g : s.groups)
    s.full.add(g.cone, "group bexc=" + join(g.key), "movsec members=" + std::to_string(g.members.size()));
  for (auto& bc : s.bogus)
    s.full.add(bc.cone, "bogus over group " + std::to_string(bc.owner), "bogus gamma+K");
  return s;
}

bool movsec_is_single_cone(const PicLattice& lat, const BoundaryCycle& b) {
  auto rep = validate_boundary(lat, b);
  if (!rep.valid) require_valid(lat, b);
  return std::none_of(rep.minus_one.begin(), rep.minus_one.end(), [](bool x) { return x; });
}

IntVec phi(const BoundaryCycle& b, const std::vector<int>& boundary_exc, const GammaPoint& P) {
  int n = int(b.n());
  IntVec out(b.classes[0].size());
  for (int i : boundary_exc) {
    long m = std::min(P.a, vertex_coefficient(n, P, i));
    if (m) out = sub(out, scale(Int(m), b.classes[i]));
  }
  return out;
}

IntVec theta_cocycle(const PicLattice& lat, const BoundaryCycle& b, const GammaPoint& P, const Chamber& alpha,
                     const Chamber& beta) {
  std::vector<IntVec> only_a, only_b;
  const auto& A = alpha.contraction.classes;
  const auto& B = beta.contraction.classes;
  std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(only_a));
  std::set_difference(B.begin(), B.end(), A.begin(), A.end(), std::back_inserter(only_b));
  if (only_a.size() + only_b.size() != 1 || !share_wall(alpha.cone, beta.cone))
    throw ValidationError("chambers are not adjacent across a single flop");
  const IntVec& e = only_a.empty() ? only_b[0] : only_a[0];
  int i = boundary_index(b, e);
  IntVec out(lat.rank());
  if (i < 0) return out;
  long m = std::min(P.a, vertex_coefficient(int(b.n()), P, i));
  if (m == 0) return out;
  return only_b.empty() ? scale(Int(-m), b.classes[i]) : scale(Int(m), b.classes[i]);
}

CocycleReport cocycle_battery(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch,
                              long max_level) {
  CocycleReport rep;
  int n = int(b.n());
  Fan f;
  f.ambient = lat.rank();
  for (auto& c : ch) f.add(c.cone, "", "");
  auto walls = adjacency(f);
  rep.walls = walls.size();
  std::vector<GammaPoint> pts;
  for (long m = 0; m <= max_level; ++m) {
    auto p = gamma_points(n, m);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  rep.points = pts.size();
  auto fail = [&](bool& flag, const std::string& s) {
    flag = false;
    if (rep.failures.size() < 20) rep.failures.push_back(s);
  };
  std::map<std::pair<size_t, size_t>, std::vector<IntVec>> value;  // per wall, per point
  for (auto [x, y] : walls) {
    auto& vals = value[{x, y}];
    auto wall = common_rays(ch[x].cone, ch[y].cone);
    // the lower chamber is the one not contracting the flopped class
    bool x_lower = ch[x].contraction.classes.size() < ch[y].contraction.classes.size();
    const Chamber& lo = x_lower ? ch[x] : ch[y];
    const Chamber& hi = x_lower ? ch[y] : ch[x];
    for (auto& P : pts) {
      IntVec c = theta_cocycle(lat, b, P, ch[x], ch[y]);
      IntVec d = theta_cocycle(lat, b, P, ch[y], ch[x]);
      vals.push_back(c);
      std::string where = "wall " + std::to_string(x) + "|" + std::to_string(y) + " at " + to_string(P);
      if (c != neg(d)) fail(rep.antisymmetric, "antisymmetry fails at " + where);
      if ((P.a == 0 || (P.b == 0 && P.b2 == 0)) && !is_zero(c))
        fail(rep.boundary_vanishes, "nonzero on the boundary or centre ray at " + where);
      IntVec up = theta_cocycle(lat, b, P, lo, hi);
      for (auto& L : lo.cone.rays)
        if (lat.dot(up, L) < 0) fail(rep.nef_nonnegative, "negative pairing with a lower-chamber ray at " + where);
      for (auto& L : wall)
        if (lat.dot(up, L) != 0) fail(rep.wall_vanishes, "nonzero pairing on the wall at " + where);
    }
  }
  // loops around codimension-two faces
  std::map<std::vector<IntVec>, std::vector<size_t>> ridges;
  size_t r = lat.rank();
  if (r >= 2) {
    for (size_t i = 0; i < ch.size(); ++i) {
      auto fl = face_lattice(ch[i].cone);
      for (auto& S : fl[r - 2]) {
        std::vector<IntVec> key;
        for (size_t t : S) key.push_back(ch[i].cone.rays[t]);
        ridges[key].push_back(i);
      }
    }
  }
  std::set<std::pair<size_t, size_t>> wallset(walls.begin(), walls.end());
  for (auto& [key, around] : ridges) {
    std::map<size_t, std::vector<size_t>> nb;
    for (size_t u : around)
      for (size_t v : around)
        if (u < v && wallset.count({u, v})) {
          nb[u].push_back(v);
          nb[v].push_back(u);
        }
    bool cycle = around.size() >= 3;
    for (size_t u : around)
      if (nb[u].size() != 2) cycle = false;
    if (!cycle) continue;
    std::vector<size_t> order{around[0]};
    size_t prev = around[0], cur = nb[around[0]][0];
    while (cur != around[0]) {
      order.push_back(cur);
      size_t next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
      prev = cur;
      cur = next;
    }
    if (order.size() != around.size()) continue;
    ++rep.loops;
    for (size_t p = 0; p < pts.size(); ++p) {
      IntVec s(r);
      for (size_t t = 0; t < order.size(); ++t) {
        size_t u = order[t], v = order[(t + 1) % order.size()];
        const auto& vals = value[{std::min(u, v), std::max(u, v)}];
        s = add(s, u < v ? vals[p] : neg(vals[p]));
      }
      if (!is_zero(s)) fail(rep.loops_close, "loop sum nonzero at " + to_string(pts[p]));
    }
  }
  return rep;
}

LineBundleData theta_line_bundles(const PicLattice& lat, const BoundaryCycle& b, const SecondaryFan& sec,
                                  const GammaPoint& P) {
  LineBundleData d;
  d.P = P;
  for (auto& g : sec.groups) d.phi.push_back(phi(b, g.key, P));
  for (size_t i = 1; i < d.phi.size(); ++i)
    if (d.phi[i] != d.phi[0]) d.trivial = false;
  Fan f;
  f.ambient = lat.rank();
  for (auto& g : sec.groups) f.add(g.cone, "", "");
  for (auto [x, y] : adjacency(f)) {
    WallBundle w{x, y, sub(d.phi[x], d.phi[y]), 0};
    auto wall = common_rays(sec.groups[x].cone, sec.groups[y].cone);
    IntVec u;
    for (auto& fn : sec.groups[x].cone.facets) {
      bool all = true;
      for (auto& r : wall)
        if (dot(fn, r) != 0) all = false;
      if (all) {
        u = fn;
        break;
      }
    }
    if (u.empty()) throw InvariantError("no facet of a MovSec group carries its wall");
    IntVec g = lat.dual(w.cocycle);
    if (!is_zero(g)) {
      size_t t = 0;
      while (u[t] == 0) ++t;
      if (g[t] % u[t] != 0 || scale(g[t] / u[t], u) != g)
        throw InvariantError("theta cocycle does not vanish on a MovSec wall");
      w.degree = g[t] / u[t];
    }
    d.walls.push_back(std::move(w));
  }
  return d;
}

std::vector<StratumRecord> one_strata_report(const SecondaryFan& sec) {
  std::vector<std::string> data;
  for (auto& g : sec.groups) data.push_back("moving:" + g.tri.describe());
  for (auto& bc : sec.bogus) {
    std::string s = "bogus:" + sec.groups[bc.owner].tri.describe() + "|eff";
    for (size_t h : bc.eff_facets) s += ":" + std::to_string(h);
    data.push_back(s);
  }
  std::vector<StratumRecord> out;
  for (auto [x, y] : adjacency(sec.full)) out.push_back({x, y, data[x], data[y], data[x] != data[y]});
  return out;
}

WeylReport weyl_equivariance(const PicLattice& lat, const BoundaryCycle& b, const std::vector<Chamber>& ch,
                             const SecondaryFan& sec, size_t limit) {
  WeylReport rep;
  auto image = [](const IntMat& w, const std::vector<IntVec>& rays) {
    std::vector<IntVec> out;
    for (auto& r : rays) out.push_back(w * r);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::map<std::vector<IntVec>, size_t> chamber_id;
  for (size_t i = 0; i < ch.size(); ++i) chamber_id[ch[i].cone.rays] = i;
  std::vector<size_t> parent(ch.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto& g : weyl_generators(lat))
    for (size_t i = 0; i < ch.size(); ++i) {
      auto it = chamber_id.find(image(g.matrix, ch[i].cone.rays));
      if (it == chamber_id.end()) {
        rep.permutes_chambers = false;
        rep.failures.push_back("a simple reflection maps chamber " + std::to_string(i) + " outside the chamber set");
        continue;
      }
      parent[find(i)] = find(it->second);
    }
  std::map<size_t, size_t> orbit;
  for (size_t i = 0; i < ch.size(); ++i) ++orbit[find(i)];
  for (auto& [k, v] : orbit) rep.chamber_orbit_sizes.push_back(v);
  std::sort(rep.chamber_orbit_sizes.rbegin(), rep.chamber_orbit_sizes.rend());

  auto W = weyl_group(lat, limit);
  rep.group_order = W.size();
  std::vector<IntVec> bset = b.classes;
  std::sort(bset.begin(), bset.end());
  std::set<std::vector<IntVec>> sec_keys;
  for (auto& c : sec.full.cones) sec_keys.insert(c.rays);
  for (auto& w : W) {
    if (image(w.matrix, b.classes) != bset) continue;
    ++rep.stabilizer_order;
    for (size_t c = 0; c < sec.full.cones.size(); ++c)
      if (!sec_keys.count(image(w.matrix, sec.full.cones[c].rays))) {
        rep.stabilizer_fixes_sec = false;
        if (rep.failures.size() < 20)
          rep.failures.push_back("a boundary-stabilising element moves Sec cone " + std::to_string(c));
      }
  }
  return rep;
}

}  // namespace dp
