#include "dpsec/affine_spine.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace dp {

namespace {

int mod(int x, int n) { return ((x % n) + n) % n; }

struct State {
  int j;
  Rat a, b;  // position in (v_j, v_{j+1})
  Int d0, d1;
};

struct Step {
  bool escaped = false;
  int ray = -1;
  Int mult;
  Rat tau;
};

// Move along the direction until the next ray, cross it and re-express the state
// in the neighbouring chart.
Step step(const AffineStructure& aff, State& st) {
  int n = aff.n;
  std::optional<Rat> ta, tb;
  if (st.d0 < 0) ta = Rat(st.a / Rat(-st.d0));
  if (st.d1 < 0) tb = Rat(st.b / Rat(-st.d1));
  Step out;
  if (!ta && !tb) {
    out.escaped = true;
    return out;
  }
  if (ta && tb && *ta == *tb) throw ValidationError("spine passes through the singular point");
  if (ta && (!tb || *ta < *tb)) {
    // hits rho_{j+1}
    Rat beta = st.b + *ta * Rat(st.d1);
    long s = aff.selfint[mod(st.j + 1, n)];
    Int d0 = st.d1 - s * st.d0, d1 = -st.d0;
    out = {false, mod(st.j + 1, n), abs(st.d0), *ta};
    st = {mod(st.j + 1, n), beta, Rat(0), d0, d1};
  } else {
    // hits rho_j
    Rat alpha = st.a + *tb * Rat(st.d0);
    long s = aff.selfint[mod(st.j, n)];
    Int d0 = -st.d1, d1 = st.d0 - s * st.d1;
    out = {false, mod(st.j, n), abs(st.d1), *tb};
    st = {mod(st.j - 1, n), Rat(0), alpha, d0, d1};
  }
  return out;
}

size_t step_cap(const AffineStructure& aff) { return size_t(4 * aff.n + 8); }

void require_spine_ok(const AffineStructure& aff) {
  if (aff.n < 3) throw ValidationError("spines need at least three rays");
}

struct Segment {
  State base;  // position at tau = 0
  std::optional<Rat> lo, hi;  // nullopt = unbounded
  std::vector<std::pair<int, Int>> before;  // crossings met coming in from infinity
};

// Straight line coming in from infinity parallel to v_a, on the given side, at offset c.
std::vector<Segment> incoming_line(const AffineStructure& aff, int a, bool right, const Rat& c) {
  int n = aff.n;
  State st = right ? State{mod(a, n), Rat(0), c, Int(-1), Int(0)} : State{mod(a - 1, n), c, Rat(0), Int(0), Int(-1)};
  std::vector<Segment> segs{{st, std::nullopt, Rat(0), {}}};
  std::vector<std::pair<int, Int>> crossed;
  for (size_t it = 0;; ++it) {
    if (it > step_cap(aff)) throw ValidationError("line does not escape to infinity");
    Step s = step(aff, st);
    if (s.escaped) {
      segs.back().hi.reset();
      if (segs.size() == 1) segs.back().hi = Rat(0);
      break;
    }
    if (it == 0 && s.tau != 0) throw InvariantError("incoming line does not start on a ray");
    crossed.push_back({s.ray, s.mult});
    if (it > 0) segs.back().hi = s.tau;
    segs.push_back({st, Rat(0), std::nullopt, crossed});
  }
  return segs;
}

bool inside(const std::optional<Rat>& lo, const std::optional<Rat>& hi, const Rat& t) {
  return (!lo || *lo < t) && (!hi || t < *hi);
}

}  // namespace

AffineStructure affine_structure(std::vector<long> selfint) {
  if (selfint.empty()) throw ValidationError("empty self-intersection sequence");
  return {int(selfint.size()), std::move(selfint)};
}

IntMat transition(const AffineStructure& aff, int i) {
  long s = aff.selfint.at(mod(i, aff.n));
  return IntMat::from_rows({iv({-s, 1}), iv({-1, 0})}, 2);
}

IntMat monodromy(const AffineStructure& aff) {
  IntMat m = IntMat::identity(2);
  for (int i = 0; i < aff.n; ++i) m = transition(aff, i) * m;
  return m;
}

std::vector<Crossing> crossings(const AffineStructure& aff, const Spine& s) {
  require_spine_ok(aff);
  std::vector<Crossing> out;
  for (size_t v = 0; v < s.vertices.size(); ++v) {
    const auto& x = s.vertices[v];
    if (x.alpha <= 0 || x.beta <= 0) throw ValidationError("spine vertex " + std::to_string(v) + " is not inside a cone");
    for (size_t l = 0; l < x.legs.size(); ++l) {
      const Leg& leg = x.legs[l];
      if (leg.dir.size() != 2 || is_zero(leg.dir)) throw ValidationError("leg direction must be a nonzero 2-vector");
      if (leg.weight <= 0) throw ValidationError("leg weights must be positive");
      State st{mod(x.cone, aff.n), x.alpha, x.beta, leg.dir[0], leg.dir[1]};
      std::optional<Rat> left = leg.length;
      if (left && *left < 0) throw ValidationError("negative leg length");
      for (size_t it = 0;; ++it) {
        if (left && *left == 0) break;
        if (it > step_cap(aff)) throw ValidationError("leg does not escape to infinity");
        State before = st;
        Step stp = step(aff, st);
        if (stp.escaped) {
          if (!left) break;
          break;
        }
        if (left) {
          if (*left == stp.tau)
            throw ValidationError("leg " + std::to_string(l) + " of vertex " + std::to_string(v) + " ends on a ray");
          if (*left < stp.tau) {
            st = before;
            break;
          }
          *left -= stp.tau;
        }
        out.push_back({stp.ray, stp.mult * leg.weight, v, l});
      }
    }
  }
  return out;
}

bool is_balanced(const AffineStructure& aff, const Spine& s) {
  (void)aff;
  for (auto& x : s.vertices) {
    if (!x.interior) continue;
    Int u = 0, w = 0;
    for (auto& leg : x.legs) {
      u += leg.weight * leg.dir[0];
      w += leg.weight * leg.dir[1];
    }
    if (u != 0 || w != 0) return false;
  }
  return true;
}

IntVec crossing_counts(const AffineStructure& aff, const Spine& s) {
  IntVec z(aff.n);
  for (auto& c : crossings(aff, s)) z[c.ray] += c.multiplicity;
  return z;
}

IntVec crossing_class(const AffineStructure& aff, const Spine& s, const std::vector<IntVec>& boundary_classes) {
  if (int(boundary_classes.size()) != aff.n) throw ValidationError("boundary class count differs from ray count");
  auto z = crossing_counts(aff, s);
  IntVec out(boundary_classes[0].size());
  for (int i = 0; i < aff.n; ++i) out = add(out, scale(z[i], boundary_classes[i]));
  return out;
}

int count(const AffineStructure& aff, const Spine& s, const IntVec& gamma) {
  if (!is_balanced(aff, s)) return 0;
  return crossing_counts(aff, s) == gamma ? 1 : 0;
}

namespace {

struct InLeg {
  IntVec u;  // outgoing direction at the endpoint, back towards infinity
  std::vector<std::pair<int, Int>> crossed;
};

// Straight lines from v_a-infinity through the point z of cone j. Lines scale with
// their offset, so it is enough to meet the radial ray through z with the offset-1 line.
std::vector<InLeg> legs_through(const AffineStructure& aff, int a, int j, const Rat& z0, const Rat& z1) {
  std::vector<InLeg> out;
  for (bool right : {true, false})
    for (auto& s : incoming_line(aff, a, right, Rat(1))) {
      if (s.base.j != j) continue;
      Rat d0(s.base.d0), d1(s.base.d1);
      Rat det = z0 * (-d1) + d0 * z1;
      if (det == 0) continue;
      Rat t = (s.base.a * (-d1) + d0 * s.base.b) / det;
      Rat tau = (z0 * s.base.b - z1 * s.base.a) / det;
      if (t <= 0 || !inside(s.lo, s.hi, tau)) continue;
      out.push_back({iv({0, 0}), s.before});
      out.back().u[0] = -s.base.d0;
      out.back().u[1] = -s.base.d1;
    }
  return out;
}

}  // namespace

std::vector<TwoLegOutput> two_leg_outputs(const AffineStructure& aff, int a, int b) {
  require_spine_ok(aff);
  int n = aff.n;
  a = mod(a, n);
  b = mod(b, n);
  const long reach = 4;
  std::map<std::pair<GammaPoint, IntVec>, TwoLegOutput> found;
  auto try_point = [&](int j, long p, long q, const Rat& z0, const Rat& z1) {
    auto A = legs_through(aff, a, j, z0, z1);
    auto B = legs_through(aff, b, j, z0, z1);
    for (auto& l1 : A)
      for (auto& l2 : B) {
        IntVec sum = add(l1.u, l2.u);
        if (sum != iv({p, q})) continue;
        IntVec z(n);
        for (auto& [ray, m] : l1.crossed) z[ray] += m;
        for (auto& [ray, m] : l2.crossed) z[ray] += m;
        GammaPoint out = canonical(n, {0, j, p, q});
        auto key = std::make_pair(out, z);
        if (found.count(key)) {
          ++found[key].multiplicity;
          continue;
        }
        SpineVertex x{j, z0, z1, true, {{l1.u, 1, std::nullopt}, {l2.u, 1, std::nullopt}}};
        if (!is_zero(sum)) x.legs.push_back({neg(sum), 1, Rat(0)});
        found[key] = {out, z, Spine{{x}}, 1};
      }
  };
  // the endpoint sits at the output point, nudged off the rays
  Rat eps(1, 997);
  for (int j = 0; j < n; ++j)
    for (long p = 0; p <= reach; ++p)
      for (long q = 0; p + q <= reach; ++q) {
        if (q == 0 && p == 0) continue;
        if (p == 0) continue;  // ray points of rho_{j+1} are handled from cone j+1
        try_point(j, p, q, Rat(p), q == 0 ? eps : Rat(q));
      }
  try_point(0, 0, 0, Rat(1), Rat(2, 7));
  std::vector<TwoLegOutput> res;
  for (auto& [k, v] : found) res.push_back(v);
  return res;
}

std::string spine_to_json(const Spine& s) {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (auto& x : s.vertices) {
    nlohmann::ordered_json v;
    v["cone"] = x.cone;
    v["position"] = {x.alpha.get_str(), x.beta.get_str()};
    v["interior"] = x.interior;
    v["legs"] = nlohmann::ordered_json::array();
    for (auto& l : x.legs) {
      nlohmann::ordered_json lj;
      lj["dir"] = {l.dir[0].get_str(), l.dir[1].get_str()};
      lj["weight"] = l.weight;
      if (l.length)
        lj["length"] = l.length->get_str();
      else
        lj["length"] = nullptr;
      v["legs"].push_back(lj);
    }
    j["vertices"].push_back(v);
  }
  return j.dump(2);
}

namespace {

Rat parse_rat(const nlohmann::json& v) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) {
      Rat r(v.get<std::string>());
      r.canonicalize();
      return r;
    }
  } catch (const std::exception&) {
  }
  throw ValidationError("expected an integer or a rational string in spine JSON");
}

Int parse_int(const nlohmann::json& v) {
  Rat r = parse_rat(v);
  if (r.get_den() != 1) throw ValidationError("expected an integer in spine JSON");
  return r.get_num();
}

}  // namespace

Spine spine_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("spine JSON: ") + e.what());
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw ValidationError("spine JSON needs a vertices array");
  Spine s;
  for (auto& v : j["vertices"]) {
    SpineVertex x;
    if (!v.contains("cone") || !v.contains("position") || v["position"].size() != 2)
      throw ValidationError("spine vertex needs cone and a two-entry position");
    x.cone = v["cone"].get<int>();
    x.alpha = parse_rat(v["position"][0]);
    x.beta = parse_rat(v["position"][1]);
    x.interior = v.value("interior", true);
    for (auto& l : v.value("legs", nlohmann::json::array())) {
      Leg leg;
      if (!l.contains("dir") || l["dir"].size() != 2) throw ValidationError("leg needs a two-entry dir");
      leg.dir = {parse_int(l["dir"][0]), parse_int(l["dir"][1])};
      leg.weight = l.value("weight", 1L);
      if (l.contains("length") && !l["length"].is_null()) leg.length = parse_rat(l["length"]);
      x.legs.push_back(std::move(leg));
    }
    s.vertices.push_back(std::move(x));
  }
  return s;
}

}  // namespace dp
