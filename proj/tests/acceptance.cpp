// Acceptance suite: one PASS/FAIL line per criterion.
#include "dpsec/affine_spine.hpp"
#include "dpsec/gkz.hpp"
#include "dpsec/pipeline.hpp"
#include "dpsec/secfan.hpp"
#include "dpsec/thetaalg.hpp"
#include "dpsec/toricstack.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace dp;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what << "; ";
    if (!cond) ok = false;
  }
};

oracle::Cls to_cls(const IntVec& v) {
  oracle::Cls c;
  for (size_t i = 0; i < v.size(); ++i) c.push_back(i == 0 ? v[i].get_si() : -v[i].get_si());
  return c;
}

std::vector<long> selfints(const PicLattice& lat, const BoundaryCycle& b) {
  std::vector<long> s;
  for (auto& c : b.classes) s.push_back(lat.dot(c, c).get_si());
  return s;
}

bool has_minus_one(const PicLattice& lat, const BoundaryCycle& b) {
  for (auto& c : b.classes)
    if (lat.dot(c, c) == -1) return true;
  return false;
}

// Standard boundaries with k <= 5 plus their distinct Weyl images.
std::vector<NamedBoundary> configurations(bool minus_one_free_only) {
  std::vector<NamedBoundary> out;
  for (auto& nb : standard_boundaries()) {
    if (nb.lat.k > 5) continue;
    if (minus_one_free_only && has_minus_one(nb.lat, nb.cycle)) continue;
    out.push_back(nb);
    if (nb.lat.model == Model::Quadric || nb.lat.k < 2) continue;
    size_t i = 0;
    for (auto& img : weyl_images(nb.lat, nb.cycle)) {
      if (canonical_rotation(img).classes == canonical_rotation(nb.cycle).classes) continue;
      out.push_back({nb.name + "/w" + std::to_string(i++), nb.lat, img, nb.toric});
      if (i >= 3) break;
    }
  }
  return out;
}

BundleInput sec_over_movsec(const SecondaryFan& sec, const IntVec& gen) {
  BundleInput in;
  in.delta = sec.full;
  in.sub.ambient = sec.full.ambient;
  for (auto& g : sec.groups) in.sub.add(g.cone, "", "");
  in.L = {gen};
  return in;
}

bool invariant_broken = false;

void c1(Outcome& o) {
  const size_t frozen[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int k = 0; k <= 8; ++k) {
    auto got = minus_one_classes(PicLattice::blowup(k));
    std::vector<oracle::Cls> mine;
    for (auto& c : got) mine.push_back(to_cls(c));
    std::sort(mine.begin(), mine.end());
    o.require(got.size() == frozen[k], "count at k=" + std::to_string(k));
    o.require(mine == oracle::minus_one_classes(k), "oracle at k=" + std::to_string(k));
  }
  o.note << "counts 0 1 3 6 10 16 27 56 240";
}

void c2(Outcome& o) {
  auto lat = PicLattice::blowup(3);
  auto cs = contractions(lat);
  std::vector<oracle::Cls> mo;
  for (auto& c : minus_one_classes(lat)) mo.push_back(to_cls(c));
  o.require(cs.size() == 18, "18 chambers");
  o.require(oracle::disjoint_sets(mo) == 18, "clique oracle");
  Fan f;
  f.ambient = lat.rank();
  std::vector<RationalCone> parts;
  for (auto& c : cs) {
    parts.push_back(mori_chamber(lat, c));
    f.add(parts.back(), "", "");
  }
  auto rep = fan_check(f);
  o.require(rep.is_fan && rep.violations.empty(), "fan_check");
  o.require(union_equals(effective_cone(lat), parts), "support equals Eff");
  o.note << cs.size() << " chambers, 0 violations";
}

void c3(Outcome& o) {
  for (const char* name : {"p2-triangle", "f1-square", "quadric-square", "dp7-pentagon", "dp6-hexagon"}) {
    auto nb = standard_boundary(name);
    auto ch = chambers(nb.lat, nb.cycle);
    auto sec = secondary_fan(nb.lat, nb.cycle, ch);
    auto rep = fan_check(sec.full);
    o.require(rep.is_fan && rep.is_complete, std::string(name) + " fan_check");
    o.require(is_coarsening(sec.full, mori_fan_K(nb.lat, nb.cycle, ch)), std::string(name) + " coarsens MoriFan(K)");
    auto pts = toric_polygon(nb.lat, nb.cycle);
    auto gkz = gkz_bruteforce(pts);
    auto cert = toric_compare(nb.lat, nb.cycle, gkz, sec);
    o.require(cert.certified, std::string(name) + " certificate");
    if (std::string(name) == "dp6-hexagon") {
      o.require(sec.full.size() == 32, "32 maximal cones");
      o.note << "hexagon: " << sec.full.size() << " cones; ";
    }
  }
  o.note << "five toric pairs certified";
}

void c4(Outcome& o) {
  size_t tested = 0;
  for (auto& nb : configurations(true)) {
    o.require(validate_boundary(nb.lat, nb.cycle).valid, nb.name + " valid");
    o.require(movsec_is_single_cone(nb.lat, nb.cycle), nb.name + " lazy predicate");
    auto ch = chambers(nb.lat, nb.cycle);
    auto groups = movsec(nb.lat, nb.cycle, ch);
    o.require(groups.size() == 1, nb.name + " single group");
    if (groups.size() == 1) o.require(groups[0].cone == effective_cone(nb.lat), nb.name + " cone is Eff");
    ++tested;
  }
  auto nodal = standard_boundary("dp1-nodal");
  o.require(nodal.lat.k == 8, "dp1-nodal is k=8");
  o.require(movsec_is_single_cone(nodal.lat, nodal.cycle), "lazy k=8");
  o.note << tested << " configurations at k<=5, lazy k=8 ok";
}

void c5(Outcome& o) {
  // frozen MovSec group counts from the secondary fan table
  std::map<std::string, size_t> groups_frozen{{"dp4-square", 7}, {"dp4-pentagon", 8}, {"dp4-bigon", 1},
                                              {"dp5-pentagon", 11}, {"dp5-square", 5}, {"dp6-hexagon", 18}};
  size_t tested = 0, groups = 0;
  std::vector<NamedBoundary> all = configurations(false);
  for (int k : {3, 4})
    for (auto& c : minus_one_cycles(PicLattice::blowup(k)))
      all.push_back({"cycle-k" + std::to_string(k), PicLattice::blowup(k), c, false});
  for (auto& nb : all) {
    auto ch = chambers(nb.lat, nb.cycle);
    std::vector<MovGroup> gs;
    try {
      gs = movsec(nb.lat, nb.cycle, ch);
    } catch (const InvariantError& e) {
      invariant_broken = true;
      o.require(false, nb.name + ": " + e.what());
      continue;
    }
    for (auto& g : gs) {
      std::vector<RationalCone> parts;
      for (size_t m : g.members) parts.push_back(ch[m].cone);
      o.require(union_equals(g.cone, parts), nb.name + " hull equals union");
    }
    auto it = groups_frozen.find(nb.name);
    if (it != groups_frozen.end()) o.require(gs.size() == it->second, nb.name + " group count");
    groups += gs.size();
    ++tested;
  }
  o.note << tested << " configurations, " << groups << " groups certified convex";
}

void c6(Outcome& o) {
  size_t tested = 0;
  for (int k : {3, 4})
    for (auto& c : minus_one_cycles(PicLattice::blowup(k))) {
      auto lat = PicLattice::blowup(k);
      auto ch = chambers(lat, c);
      o.require(grouping_by_triangulation(ch) == grouping_by_boundary_exc(ch), "groupings at k=" + std::to_string(k));
      ++tested;
    }
  o.note << tested << " cycles of (-1)-curves";
}

void c7(Outcome& o) {
  for (int n = 1; n <= 9; ++n) {
    auto t = make_triangulation(n);
    for (long m = 0; m <= 20; ++m) {
      long want = m == 0 ? 1 : (n * m * m + n * m + 2) / 2;
      o.require(long(gamma_points_by_cells(t, m).size()) == want, "h(" + std::to_string(m) + ") n=" + std::to_string(n));
      o.require(long(hilbert(n, m)) == oracle::umbrella_points(n, m), "oracle");
    }
    o.require(proj_degree(n, 20) == n, "degree n=" + std::to_string(n));
  }
  o.note << "n=1..9, m<=20, degree n";
}

void c8(Outcome& o) {
  for (int n = 1; n <= 9; ++n) {
    for (long m = 1; m <= 5; ++m) {
      auto b = boundary_algebra(n, m);
      o.require(b.component_dims == std::vector<size_t>(n, size_t(m + 1)), "component dims");
      o.require(b.products_ok, "boundary products");
    }
    auto r = theta_divisor_checks(make_triangulation(n));
    o.require(r.nodes == size_t(n) && r.nodes_missed == size_t(n), "Theta misses nodes");
    o.require(r.center_unique && r.center_theta_nonzero, "centre");
    o.require(!r.center_theta_prime_nonzero, "Theta' breaks the centre check");
    o.require(r.homomorphisms_ok, "evaluations");
  }
  o.note << "n=1..9";
}

void c9(Outcome& o) {
  for (auto& nb : standard_boundaries()) {
    bool ident = monodromy(affine_structure(selfints(nb.lat, nb.cycle))) == IntMat::identity(2);
    o.require(ident == nb.toric, nb.name + " monodromy");
  }
  o.require(monodromy(affine_structure({-1, -1, -1})) != IntMat::identity(2), "(-1,-1,-1)");

  std::mt19937 rng(7);
  auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  const char* toric[] = {"p2-triangle", "f1-square", "quadric-square", "dp7-pentagon", "dp6-hexagon"};
  size_t spines = 0;
  for (int round = 0; spines < 40 && round < 4000; ++round) {
    auto nb = standard_boundary(toric[round % 5]);
    auto s = selfints(nb.lat, nb.cycle);
    auto aff = affine_structure(s);
    int n = int(s.size());
    auto u = oracle::toric_rays(s);
    SpineVertex vx;
    vx.cone = int(pick(0, n - 1));
    long pa = pick(1, 3), pb = pick(1, 3);
    vx.alpha = pa;
    vx.beta = pb;
    vx.interior = true;
    oracle::P2 a = u[vx.cone], b = u[(vx.cone + 1) % n];
    oracle::P2 p{pa * a[0] + pb * b[0], pa * a[1] + pb * b[1]};
    // trivalent vertex: two random legs and the balancing third
    long d[3][2];
    d[0][0] = pick(-2, 2), d[0][1] = pick(-2, 2), d[1][0] = pick(-2, 2), d[1][1] = pick(-2, 2);
    d[2][0] = -d[0][0] - d[1][0], d[2][1] = -d[0][1] - d[1][1];
    std::vector<long> want(n, 0);
    bool skip = false;
    for (auto& dd : d) {
      oracle::P2 D{dd[0] * a[0] + dd[1] * b[0], dd[0] * a[1] + dd[1] * b[1]};
      if ((D[0] == 0 && D[1] == 0) || p[0] * D[1] - p[1] * D[0] == 0) skip = true;
      if (skip) break;
      auto c = oracle::toric_crossings(s, vx.cone, pa, pb, dd[0], dd[1], 1);
      for (int j = 0; j < n; ++j) want[j] += c[j];
      vx.legs.push_back(Leg{iv({dd[0], dd[1]}), 1, std::nullopt});
    }
    if (skip) continue;
    Spine sp{{vx}};
    IntVec z = crossing_counts(aff, sp);
    IntVec w(n);
    for (int j = 0; j < n; ++j) w[j] = want[j];
    o.require(z == w, "crossings vs planar oracle");
    o.require(count(aff, sp, z) == 1, "count(h, Z(h)) = 1");
    IntVec off = z;
    off[0] += 1;
    o.require(count(aff, sp, off) == 0, "count(h, gamma) = 0");
    ++spines;
  }
  o.require(spines >= 20, "at least 20 spines");

  auto hex = standard_boundary("dp6-hexagon");
  auto aff = affine_structure(selfints(hex.lat, hex.cycle));
  size_t flops = 0;
  for (int i = 0; i < 6; ++i)
    for (int a = 0; a < 6; ++a)
      for (int b = a; b < 6; ++b) {
        auto e = flop_stratum_product(hex.lat, hex.cycle, vertex_point(6, a), vertex_point(6, b), i);
        std::set<std::pair<GammaPoint, long>> want, got;
        for (auto& t : two_leg_outputs(aff, a, b)) {
          bool only_i = true;
          for (int j = 0; j < 6; ++j)
            if (j != i && t.z[j] != 0) only_i = false;
          if (only_i && t.z[i] >= 0) want.insert({t.q, t.z[i].get_si()});
        }
        for (auto& [key, c] : e.terms) {
          GammaPoint q = key.first;
          q.a = 0;
          q = canonical(6, q);
          long ex = 0;
          if (!key.second.empty())
            for (size_t t = 0; t < key.second.size(); ++t)
              if (hex.cycle.classes[i][t] != 0) {
                ex = Int(key.second[t] / hex.cycle.classes[i][t]).get_si();
                break;
              }
          got.insert({q, ex});
        }
        o.require(want == got, "flop vs two-leg");
        ++flops;
      }
  o.note << spines << " spines, " << flops << " degree-6 flop cases";
}

void c10(Outcome& o) {
  size_t walls = 0, loops = 0;
  for (const char* name : {"dp6-hexagon", "dp6-triangle", "dp5-pentagon", "dp5-square", "dp5-bigon"}) {
    auto nb = standard_boundary(name);
    auto ch = chambers(nb.lat, nb.cycle);
    auto r = cocycle_battery(nb.lat, nb.cycle, ch, 3);
    o.require(r.antisymmetric && r.loops_close && r.boundary_vanishes && r.nef_nonnegative && r.wall_vanishes,
              std::string(name) + " battery");
    walls += r.walls;
    loops += r.loops;
  }
  o.note << walls << " walls, " << loops << " loops, levels <= 3";
}

void c11(Outcome& o) {
  BundleInput ex;
  ex.delta.ambient = 2;
  ex.delta.add(cone_from_rays({iv({1, 1}), iv({1, -1})}), "", "");
  ex.sub.ambient = 2;
  ex.sub.add(cone_from_rays({iv({1, -1})}, {}, 2), "", "");
  ex.L = {iv({1, 1})};
  auto cert = decompose(ex);
  o.require(cert.ok, "example decomposes");
  Int top = 1;
  for (auto& e : stabilizers(ex, cert).entries) top = std::max(top, e.group.order());
  o.require(top == 2, "Z/2 stabilizer");

  size_t certified = 0;
  for (auto& nb : standard_boundaries()) {
    if (nb.lat.k > 5) continue;
    auto ch = chambers(nb.lat, nb.cycle);
    auto sec = secondary_fan(nb.lat, nb.cycle, ch);
    auto in = sec_over_movsec(sec, nb.lat.canonical);
    auto c1 = decompose(in);
    o.require(c1.ok && check_bundle(in).ok, nb.name + " bundle certificate");
    if (!c1.ok) continue;
    ++certified;
    auto s1 = stabilizers(in, c1);
    auto in2 = sec_over_movsec(sec, scale(Int(2), nb.lat.canonical));
    auto c2 = decompose(in2);
    o.require(c2.ok, nb.name + " doubled decomposes");
    if (!c2.ok) continue;
    auto s2 = stabilizers(in2, c2);
    bool same_fan = c1.splits.size() == c2.splits.size() && c1.delta_L == c2.delta_L;
    for (size_t i = 0; same_fan && i < c1.splits.size(); ++i)
      same_fan = c1.splits[i].sigma1 == c2.splits[i].sigma1 && c1.splits[i].sigma2 == c2.splits[i].sigma2;
    o.require(same_fan, nb.name + " coarse fan unchanged by doubling");
    bool changed = s1.entries.size() != s2.entries.size();
    for (size_t i = 0; !changed && i < s1.entries.size(); ++i)
      changed = s1.entries[i].group.invariant_factors != s2.entries[i].group.invariant_factors;
    o.require(changed, nb.name + " stabilizers change under doubling");
  }
  o.note << "Z/2 example; " << certified << " Sec/MovSec certificates at k<=5";
}

void c12(Outcome& o) {
  size_t tested = 0;
  for (auto& nb : standard_boundaries()) {
    if (nb.lat.k > 5 || nb.lat.model == Model::Quadric || nb.lat.k < 2) continue;
    auto ch = chambers(nb.lat, nb.cycle);
    auto sec = secondary_fan(nb.lat, nb.cycle, ch);
    auto w = weyl_equivariance(nb.lat, nb.cycle, ch, sec);
    o.require(w.permutes_chambers, nb.name + " permutes chambers");
    o.require(w.stabilizer_fixes_sec, nb.name + " stabilizer fixes Sec");
    size_t total = 0;
    for (size_t s : w.chamber_orbit_sizes) total += s;
    o.require(total == ch.size(), nb.name + " orbits cover the chambers");
    if (nb.name == "dp6-hexagon") {
      o.note << "dp6 orbits";
      for (size_t s : w.chamber_orbit_sizes) o.note << " " << s;
      o.note << "; ";
    }
    ++tested;
  }
  o.note << tested << " boundaries at k<=5";
}

void c13(Outcome& o) {
  for (const char* name : {"p2-triangle", "dp6-hexagon", "dp5-pentagon"}) {
    RunConfig a, b;
    a.input = b.input = boundary_by_name(name);
    a.workers = 1;
    b.workers = 4;
    auto ra = run_pipeline(a), rb = run_pipeline(b);
    o.require(ra.files == rb.files && ra.hash == rb.hash, std::string(name) + " byte-identical");
  }
  o.note << "workers 1 vs 4 on three inputs";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
    double limit_s;  // 0 = no limit
  };
  std::vector<Criterion> all = {
      {1, "(-1)-class counts", c1, 5},
      {2, "degree-6 Mori chambers tile Eff", c2, 10},
      {3, "Sec(K) vs GKZ for the toric pairs", c3, 120},
      {4, "single MovSec cone without (-1)-components", c4, 0},
      {5, "MovSec group convexity", c5, 0},
      {6, "triangulation grouping equals boundary-exceptional grouping", c6, 0},
      {7, "umbrella Hilbert function and degree", c7, 5},
      {8, "boundary algebra and Theta", c8, 0},
      {9, "monodromy, spine counts, flop products", c9, 0},
      {10, "cocycle battery", c10, 0},
      {11, "toric stack", c11, 0},
      {12, "Weyl equivariance", c12, 0},
      {13, "determinism across worker counts", c13, 0},
  };
  int failed = 0;
  for (auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const InvariantError& e) {
      invariant_broken = true;
      o.require(false, std::string("invariant: ") + e.what());
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) o.require(false, "runtime over " + std::to_string(int(c.limit_s)) + " s");
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << secs;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << t.str() << " s) "
              << o.note.str() << std::endl;
    if (!o.ok) ++failed;
  }
  if (invariant_broken) return 3;
  return failed ? 1 : 0;
}
