#include "dpsec/toricstack.hpp"

#include "dpsec/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dp {

namespace {

size_t ambient_of(const BundleInput& in) {
  if (in.delta.size() == 0) throw ValidationError("empty fan");
  return in.delta.ambient ? in.delta.ambient : in.delta.cones[0].ambient;
}

bool cone_of(const Fan& f, const RationalCone& c) {
  for (auto& t : f.cones)
    if (t == c || is_face(c, t)) return true;
  return false;
}

bool span_meets_L(const std::vector<IntVec>& gens, const std::vector<IntVec>& L, size_t d) {
  std::vector<IntVec> all = gens;
  all.insert(all.end(), L.begin(), L.end());
  return rank_of(all, d) != rank_of(gens, d) + rank_of(L, d);
}

std::vector<RationalCone> all_faces(const RationalCone& c) {
  std::vector<RationalCone> out;
  size_t low = c.lineality.size();
  for (size_t codim = 0; codim + low <= c.dim; ++codim) {
    auto fs = faces(c, codim);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  return out;
}

// Group generated by the lattice points of a rational cone: its span meet the lattice.
std::vector<IntVec> lattice_span(const RationalCone& c) {
  auto g = c.generators();
  if (g.empty()) return {};
  return saturate(g);
}

std::string key_of(const RationalCone& c) {
  std::string s;
  for (auto& r : c.rays) s += to_string(r);
  s += "|";
  for (auto& r : c.lineality) s += to_string(r);
  return s;
}

}  // namespace

RatVec l_coordinates(const std::vector<IntVec>& L, const IntVec& v) {
  auto x = solve_rational(L, v);
  if (!x) throw ValidationError("vector " + to_string(v) + " is not in the span of L");
  return *x;
}

DecompositionCert decompose(const BundleInput& in, int workers) {
  size_t d = ambient_of(in);
  for (auto& l : in.L)
    if (l.size() != d) throw ValidationError("L basis vector has wrong length");
  if (rank_of(in.L, d) != in.L.size()) throw ValidationError("L basis is not linearly independent");
  for (size_t i = 0; i < in.sub.size(); ++i)
    if (!cone_of(in.delta, in.sub.cones[i]))
      throw ValidationError("subfan cone " + std::to_string(i) + " is not a cone of the fan");
  RationalCone lspace = cone_from_rays({}, in.L, d);
  DecompositionCert cert;
  cert.splits.resize(in.delta.size());
  std::vector<std::string> why(in.delta.size());
  parallel_for(in.delta.size(), workers, [&](size_t i) {
    const RationalCone& s = in.delta.cones[i];
    ConeSplit& sp = cert.splits[i];
    sp.cone = i;
    std::string name = "cone " + std::to_string(i) + (in.delta.labels.size() > i ? " (" + in.delta.labels[i] + ")" : "");
    if (cone_of(in.sub, s)) {
      sp.in_sub = true;
      sp.sigma1 = zero_cone(d);
      sp.sigma2 = s;
      return;
    }
    sp.sigma1 = intersect(s, lspace);
    if (sp.sigma1.dim == 0) {
      why[i] = name + ": meets L_R only in 0 but is not a cone of the subfan";
      return;
    }
    // largest faces whose span meets L_R trivially
    std::vector<RationalCone> good;
    for (auto& f : all_faces(s)) {
      if (span_meets_L(f.generators(), in.L, d)) continue;
      bool inside = false;
      for (auto& g : good)
        if (g.contains_cone(f)) inside = true;
      if (!inside) good.push_back(f);
    }
    std::vector<RationalCone> maximal;
    for (auto& f : good) {
      bool below = false;
      for (auto& g : good)
        if (!(g == f) && g.contains_cone(f)) below = true;
      if (!below) maximal.push_back(f);
    }
    if (maximal.size() != 1) {
      why[i] = name + ": " + std::to_string(maximal.size()) + " maximal faces with span transverse to L_R";
      return;
    }
    sp.sigma2 = maximal[0];
    if (!cone_of(in.sub, sp.sigma2)) {
      why[i] = name + ": transverse face " + key_of(sp.sigma2) + " is not a cone of the subfan";
      return;
    }
    auto gens = sp.sigma1.generators();
    for (auto& r : sp.sigma2.rays) gens.push_back(r);
    if (!(cone_from_rays(gens, {}, d) == s)) {
      why[i] = name + ": sigma1 + sigma2 is a proper subcone";
      return;
    }
  });
  for (auto& w : why)
    if (!w.empty()) cert.failures.push_back(w);
  cert.ok = cert.failures.empty();
  if (cert.ok) {
    std::vector<RationalCone> l;
    for (auto& sp : cert.splits)
      if (std::find(l.begin(), l.end(), sp.sigma1) == l.end()) l.push_back(sp.sigma1);
    std::sort(l.begin(), l.end(), [](const RationalCone& a, const RationalCone& b) { return key_of(a) < key_of(b); });
    for (size_t a = 0; a < l.size(); ++a)
      for (size_t b = a + 1; b < l.size(); ++b)
        if (!meet_in_common_face(l[a], l[b])) {
          cert.ok = false;
          cert.failures.push_back("the cones sigma1 do not form a fan in L: " + key_of(l[a]) + " vs " + key_of(l[b]));
        }
    cert.delta_L = std::move(l);
  }
  return cert;
}

Fan build_tilde(const BundleInput& in, const DecompositionCert& cert) {
  if (!cert.ok) throw ValidationError("decomposition failed: " + cert.failures.front());
  size_t d = ambient_of(in), r = in.L.size();
  IntMat b(d, r + d);
  for (size_t j = 0; j < r; ++j)
    for (size_t i = 0; i < d; ++i) b(i, j) = in.L[j][i];
  for (size_t i = 0; i < d; ++i) b(i, r + i) = 1;
  auto lift_l = [&](const IntVec& v) {
    IntVec c = clear_denominators(l_coordinates(in.L, v));
    IntVec out(r + d, Int(0));
    for (size_t j = 0; j < r; ++j) out[j] = c[j];
    return out;
  };
  Fan t;
  t.ambient = r + d;
  for (auto& sp : cert.splits) {
    std::vector<IntVec> rays, lin;
    for (auto& v : sp.sigma1.rays) rays.push_back(lift_l(v));
    for (auto& v : sp.sigma1.lineality) lin.push_back(lift_l(v));
    for (auto& v : sp.sigma2.rays) {
      IntVec w(r + d, Int(0));
      for (size_t i = 0; i < d; ++i) w[r + i] = v[i];
      rays.push_back(w);
    }
    RationalCone c = cone_from_rays(rays, lin, r + d);
    if (!(linear_image(b, c) == in.delta.cones[sp.cone]))
      throw InvariantError("b-image of lifted cone " + std::to_string(sp.cone) + " differs from the cone");
    std::string label = in.delta.labels.size() > sp.cone ? in.delta.labels[sp.cone] : std::to_string(sp.cone);
    t.add(std::move(c), label, sp.in_sub ? "subfan" : "split");
  }
  return t;
}

StabilizerReport stabilizers(const BundleInput& in, const DecompositionCert& cert) {
  if (!cert.ok) throw ValidationError("decomposition failed: " + cert.failures.front());
  size_t d = ambient_of(in), r = in.L.size();
  // N1 is generated by tau1 meet L: saturate inside L coordinates, then map back to N.
  auto n1_of = [&](const RationalCone& tau1) {
    std::vector<IntVec> coords;
    for (auto& g : tau1.generators()) coords.push_back(clear_denominators(l_coordinates(in.L, g)));
    std::vector<IntVec> out;
    if (coords.empty()) return out;
    for (auto& c : saturate(coords)) {
      IntVec v(d, Int(0));
      for (size_t j = 0; j < r; ++j)
        for (size_t i = 0; i < d; ++i) v[i] += c[j] * in.L[j][i];
      out.push_back(v);
    }
    return out;
  };
  StabilizerReport rep;
  std::set<std::string> seen;
  for (auto& sp : cert.splits) {
    for (auto& t1 : all_faces(sp.sigma1))
      for (auto& t2 : all_faces(sp.sigma2)) {
        std::string key = key_of(t1) + "#" + key_of(t2);
        if (!seen.insert(key).second) continue;
        StabilizerEntry e;
        e.cone = sp.cone;
        e.tau1 = t1;
        e.tau2 = t2;
        auto gens = n1_of(t1);
        auto n2 = lattice_span(t2);
        gens.insert(gens.end(), n2.begin(), n2.end());
        e.group = torsion_quotient(gens, d);
        e.index = 0;
        if (e.group.free_rank == 0) e.index = e.group.order();
        if (!e.group.trivial()) ++rep.nontrivial;
        rep.entries.push_back(std::move(e));
      }
  }
  return rep;
}

BundleCheck check_bundle(const BundleInput& in, const std::optional<QuotientData>& q, int workers) {
  BundleCheck out;
  auto cert = decompose(in, workers);
  if (!cert.ok) {
    out.decomposes = false;
    out.failures = cert.failures;
  }
  if (q) {
    size_t d = ambient_of(in), r = in.L.size();
    const IntMat& p = q->proj;
    if (p.cols != d) throw ValidationError("projection has wrong number of columns");
    for (auto& l : in.L)
      if (!is_zero(p * l)) {
        out.lifts = false;
        out.failures.push_back("L is not in the kernel of the projection");
      }
    SNF s = smith_normal_form(p);
    size_t rk = 0;
    bool unimodular = true;
    for (size_t i = 0; i < std::min(s.D.rows, s.D.cols); ++i)
      if (s.D(i, i) != 0) {
        ++rk;
        if (abs(s.D(i, i)) != 1) unimodular = false;
      }
    if (rk != p.rows || !unimodular || rk + r != d || !torsion_quotient(in.L, d).trivial()) {
      out.lifts = false;
      out.failures.push_back("0 -> L -> N -> Nbar -> 0 is not exact");
    }
    if (cert.ok)
      for (auto& sp : cert.splits) {
        std::vector<IntVec> rays, lin;
        for (auto& v : sp.sigma1.rays) rays.push_back(clear_denominators(l_coordinates(in.L, v)));
        for (auto& v : sp.sigma1.lineality) lin.push_back(clear_denominators(l_coordinates(in.L, v)));
        RationalCone c1 = rays.empty() && lin.empty() ? zero_cone(r) : cone_from_rays(rays, lin, r);
        if (!cone_of(q->delta_L, c1)) {
          out.lifts = false;
          out.failures.push_back("cone " + std::to_string(sp.cone) + ": sigma1 is not a cone of the fan in L");
        }
      }
    std::vector<int> hit(q->delta_bar.size(), 0);
    for (size_t i = 0; i < in.sub.size(); ++i) {
      const RationalCone& t = in.sub.cones[i];
      if (span_meets_L(t.generators(), in.L, d)) {
        out.lifts = false;
        out.failures.push_back("subfan cone " + std::to_string(i) + " is not transverse to L");
        continue;
      }
      RationalCone img = linear_image(p, t);
      bool found = false;
      for (size_t j = 0; j < q->delta_bar.size(); ++j)
        if (q->delta_bar.cones[j] == img) {
          ++hit[j];
          found = true;
        }
      if (!found) {
        out.lifts = false;
        out.failures.push_back("subfan cone " + std::to_string(i) + " maps to no maximal cone of the quotient fan");
      }
    }
    for (size_t j = 0; j < hit.size(); ++j)
      if (hit[j] != 1) {
        out.lifts = false;
        out.failures.push_back("quotient cone " + std::to_string(j) + " is lifted " + std::to_string(hit[j]) + " times");
      }
  }
  out.ok = out.decomposes && out.lifts;
  return out;
}

bool character_extends(const std::vector<IntVec>& L, const DecompositionCert& cert, const IntVec& chi) {
  if (chi.size() != L.size()) throw ValidationError("character has wrong length");
  for (auto& c : cert.delta_L) {
    for (auto& g : c.rays)
      if (dot(chi, clear_denominators(l_coordinates(L, g))) < 0) return false;
    for (auto& g : c.lineality)
      if (dot(chi, clear_denominators(l_coordinates(L, g))) != 0) return false;
  }
  return true;
}

}  // namespace dp
