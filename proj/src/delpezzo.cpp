#include "dpsec/delpezzo.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace dp {

PicLattice PicLattice::blowup(int k) {
  if (k < 0 || k > 8) throw ValidationError("blowup count must be in 0..8, got " + std::to_string(k));
  PicLattice p;
  p.k = k;
  p.model = Model::Blowup;
  std::vector<long> d(k + 1, -1);
  d[0] = 1;
  p.form = BilinearForm(IntMat::diag(d));
  p.canonical = IntVec(k + 1, 1);
  p.canonical[0] = -3;
  return p;
}

PicLattice PicLattice::quadric() {
  PicLattice p;
  p.k = 1;
  p.model = Model::Quadric;
  p.form = BilinearForm(IntMat::from_rows({iv({0, 1}), iv({1, 0})}, 2));
  p.canonical = iv({-2, -2});
  return p;
}

std::vector<std::string> PicLattice::basis_labels() const {
  if (model == Model::Quadric) return {"f1", "f2"};
  std::vector<std::string> out{"H"};
  for (int i = 1; i <= k; ++i) out.push_back("E" + std::to_string(i));
  return out;
}

std::string PicLattice::name() const {
  if (model == Model::Quadric) return "P1xP1";
  if (k == 0) return "P2";
  return "Bl" + std::to_string(k) + "P2";
}

std::string PicLattice::class_name(const IntVec& c) const {
  auto labels = basis_labels();
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Int a = abs(c[i]);
    s += c[i] < 0 ? "-" : (s.empty() ? "" : "+");
    if (a != 1) s += a.get_str();
    s += labels[i];
  }
  return s.empty() ? "0" : s;
}

namespace {

// All a in Z^k with sum(a) = S and sum(a^2) = Q.
void split_vectors(int k, long S, long Q, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  int r = k - int(cur.size());
  if (r == 0) {
    if (S == 0 && Q == 0) out.push_back(cur);
    return;
  }
  if (Q < 0 || S * S > long(r) * Q) return;
  long b = long(std::sqrt(double(Q)));
  while (b * b > Q) --b;
  while ((b + 1) * (b + 1) <= Q) ++b;
  for (long a = -b; a <= b; ++a) {
    cur.push_back(a);
    split_vectors(k, S - a, Q - a * a, cur, out);
    cur.pop_back();
  }
}

// Classes dH - sum a_i E_i with sum a = 3d + shift and sum a^2 = d^2 + sq.
std::vector<IntVec> blowup_classes(int k, long shift, long sq) {
  std::set<IntVec> found;
  for (long d = -8; d <= 8; ++d) {
    std::vector<std::vector<long>> sols;
    std::vector<long> cur;
    split_vectors(k, 3 * d + shift, d * d + sq, cur, sols);
    for (auto& a : sols) {
      if (std::abs(d) == 8) throw InvariantError("class search found a solution at the degree bound");
      IntVec v(k + 1);
      v[0] = d;
      for (int i = 0; i < k; ++i) v[i + 1] = -a[i];
      found.insert(v);
    }
  }
  return {found.begin(), found.end()};
}

IntMat reflection(const PicLattice& lat, const IntVec& alpha) {
  size_t r = lat.rank();
  IntMat m(r, r);
  for (size_t j = 0; j < r; ++j) {
    IntVec e(r);
    e[j] = 1;
    IntVec img = add(e, scale(lat.dot(e, alpha), alpha));
    for (size_t i = 0; i < r; ++i) m(i, j) = img[i];
  }
  return m;
}

}  // namespace

std::vector<IntVec> minus_one_classes(const PicLattice& lat) {
  if (lat.model == Model::Quadric) return {};
  return blowup_classes(lat.k, -1, 1);
}

std::vector<IntVec> roots(const PicLattice& lat) {
  if (lat.model == Model::Quadric) return {iv({-1, 1}), iv({1, -1})};
  return blowup_classes(lat.k, 0, 2);
}

std::vector<IntVec> ne_generators(const PicLattice& lat) {
  if (lat.model == Model::Quadric) return {iv({0, 1}), iv({1, 0})};
  if (lat.k == 0) return {iv({1})};
  if (lat.k == 1) return {iv({0, 1}), iv({1, -1})};
  return minus_one_classes(lat);
}

RationalCone effective_cone(const PicLattice& lat) { return cone_from_rays(ne_generators(lat), {}, lat.rank()); }

RationalCone nef_cone(const PicLattice& lat) {
  std::vector<IntVec> ineqs;
  for (auto& c : ne_generators(lat)) ineqs.push_back(lat.dual(c));
  return cone_from_inequalities(lat.rank(), ineqs);
}

std::vector<Contraction> contractions(const PicLattice& lat, int cap) {
  if (lat.model == Model::Blowup && lat.k > cap)
    throw ValidationError("full contraction enumeration is capped at k <= " + std::to_string(cap) +
                          "; use the lazy grouping predicate for k = " + std::to_string(lat.k));
  auto cls = minus_one_classes(lat);
  size_t m = cls.size();
  std::vector<std::vector<bool>> orth(m, std::vector<bool>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) orth[i][j] = i != j && lat.dot(cls[i], cls[j]) == 0;
  std::vector<Contraction> out;
  std::vector<size_t> cur;
  std::function<void(size_t)> rec = [&](size_t from) {
    Contraction c;
    for (size_t i : cur) c.classes.push_back(cls[i]);
    out.push_back(std::move(c));
    for (size_t j = from; j < m; ++j) {
      bool ok = true;
      for (size_t i : cur)
        if (!orth[i][j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

RationalCone mori_chamber(const PicLattice& lat, const Contraction& c) {
  std::vector<IntVec> ineqs, eqs;
  for (auto& g : ne_generators(lat)) ineqs.push_back(lat.dual(g));
  for (auto& f : c.classes) {
    if (lat.dot(f, f) != -1 || lat.dot(f, lat.canonical) != -1)
      throw ValidationError("contraction contains a non-(-1)-class " + lat.class_name(f));
    eqs.push_back(lat.dual(f));
  }
  for (size_t i = 0; i < c.classes.size(); ++i)
    for (size_t j = i + 1; j < c.classes.size(); ++j)
      if (lat.dot(c.classes[i], c.classes[j]) != 0)
        throw ValidationError("contraction classes are not pairwise orthogonal");
  RationalCone face = cone_from_inequalities(lat.rank(), ineqs, eqs);
  std::vector<IntVec> rays = face.rays;
  rays.insert(rays.end(), c.classes.begin(), c.classes.end());
  if (rays.empty() && face.lineality.empty()) return zero_cone(lat.rank());
  return cone_from_rays(rays, face.lineality, lat.rank());
}

std::vector<IntVec> simple_roots(const PicLattice& lat) {
  if (lat.model == Model::Quadric) return {iv({1, -1})};
  std::vector<IntVec> out;
  size_t r = lat.rank();
  for (int i = 1; i < lat.k; ++i) {
    IntVec a(r);
    a[i] = 1;
    a[i + 1] = -1;
    out.push_back(a);
  }
  if (lat.k >= 3) {
    IntVec a(r);
    a[0] = 1;
    a[1] = a[2] = a[3] = -1;
    out.push_back(a);
  }
  return out;
}

std::vector<WeylElement> weyl_generators(const PicLattice& lat) {
  std::vector<WeylElement> out;
  for (auto& a : simple_roots(lat)) out.push_back({reflection(lat, a)});
  return out;
}

IntVec act(const WeylElement& w, const IntVec& v) { return w.matrix * v; }

std::vector<WeylElement> weyl_group(const PicLattice& lat, size_t limit) {
  auto gens = weyl_generators(lat);
  IntMat id = IntMat::identity(lat.rank());
  std::set<std::vector<Int>> seen{id.a};
  std::vector<WeylElement> out{{id}};
  for (size_t q = 0; q < out.size(); ++q) {
    for (auto& g : gens) {
      IntMat m = g.matrix * out[q].matrix;
      if (seen.insert(m.a).second) {
        if (out.size() >= limit) throw ValidationError("Weyl group exceeds the element limit");
        out.push_back({m});
      }
    }
  }
  return out;
}

BoundaryReport validate_boundary(const PicLattice& lat, const BoundaryCycle& b) {
  BoundaryReport rep;
  auto bad = [&](const std::string& s) {
    rep.valid = false;
    rep.diagnostics.push_back(s);
  };
  size_t n = b.n();
  if (n == 0) {
    bad("boundary cycle is empty");
    return rep;
  }
  for (size_t i = 0; i < n; ++i)
    if (b.classes[i].size() != lat.rank()) {
      bad("D" + std::to_string(i + 1) + " has " + std::to_string(b.classes[i].size()) + " coordinates, expected " +
          std::to_string(lat.rank()));
      return rep;
    }
  IntVec sum(lat.rank());
  for (auto& d : b.classes) sum = add(sum, d);
  if (sum != neg(lat.canonical))
    bad("sum of boundary classes is " + lat.class_name(sum) + ", expected -K = " +
        lat.class_name(neg(lat.canonical)));
  for (size_t i = 0; i < n; ++i) {
    const IntVec& d = b.classes[i];
    Int sq = lat.dot(d, d);
    Int ak = -lat.dot(d, lat.canonical);
    rep.selfint.push_back(sq);
    rep.minus_one.push_back(sq == -1 && ak == 1);
    // n = 1: a nodal rational curve has arithmetic genus one
    Int expect = n == 1 ? ak : ak - 2;
    if (sq != expect)
      bad("D" + std::to_string(i + 1) + " = " + lat.class_name(d) + " has D^2 = " + sq.get_str() +
          ", adjunction requires " + expect.get_str());
  }
  if (n == 2) {
    Int p = lat.dot(b.classes[0], b.classes[1]);
    if (p != 2) bad("D1.D2 = " + p.get_str() + ", a two-cycle requires 2");
  } else if (n >= 3) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        bool adj = j == i + 1 || (i == 0 && j == n - 1);
        Int p = lat.dot(b.classes[i], b.classes[j]);
        Int want = adj ? 1 : 0;
        if (p != want)
          bad("D" + std::to_string(i + 1) + ".D" + std::to_string(j + 1) + " = " + p.get_str() + ", expected " +
              want.get_str());
      }
  }
  bool all_minus_one = std::all_of(rep.minus_one.begin(), rep.minus_one.end(), [](bool x) { return x; });
  if (rep.valid && all_minus_one && n > 6) bad("a cycle of (-1)-curves has at most 6 components");
  return rep;
}

void require_valid(const PicLattice& lat, const BoundaryCycle& b) {
  auto rep = validate_boundary(lat, b);
  if (rep.valid) return;
  std::string msg = "invalid boundary cycle:";
  for (auto& d : rep.diagnostics) msg += "\n  " + d;
  throw ValidationError(msg);
}

BoundaryCycle canonical_rotation(const BoundaryCycle& b) {
  BoundaryCycle best = b;
  size_t n = b.n();
  for (size_t s = 1; s < n; ++s) {
    BoundaryCycle r;
    for (size_t i = 0; i < n; ++i) r.classes.push_back(b.classes[(i + s) % n]);
    if (r.classes < best.classes) best = r;
  }
  return best;
}

std::vector<BoundaryCycle> minus_one_cycles(const PicLattice& lat) {
  std::vector<BoundaryCycle> out;
  if (lat.model == Model::Quadric) return out;
  int n = 9 - lat.k;
  auto cls = minus_one_classes(lat);
  size_t m = cls.size();
  if (n == 2) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        BoundaryCycle b{{cls[i], cls[j]}};
        if (validate_boundary(lat, b).valid) out.push_back(b);
      }
    return out;
  }
  if (n < 3) return out;
  std::vector<size_t> cur;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == n) {
      if (cur[1] > cur.back()) return;  // one orientation per cycle
      BoundaryCycle b;
      for (size_t i : cur) b.classes.push_back(cls[i]);
      if (validate_boundary(lat, b).valid) out.push_back(b);
      return;
    }
    for (size_t j = cur[0] + 1; j < m; ++j) {
      if (std::find(cur.begin(), cur.end(), j) != cur.end()) continue;
      if (lat.dot(cls[cur.back()], cls[j]) != 1) continue;
      bool ok = true;
      for (size_t t = 0; t + 1 < cur.size() && ok; ++t) {
        bool closing = t == 0 && int(cur.size()) == n - 1;
        Int want = closing ? 1 : 0;
        if (lat.dot(cls[cur[t]], cls[j]) != want) ok = false;
      }
      if (!ok) continue;
      cur.push_back(j);
      rec();
      cur.pop_back();
    }
  };
  for (size_t s = 0; s < m; ++s) {
    cur = {s};
    rec();
  }
  return out;
}

std::vector<BoundaryCycle> weyl_images(const PicLattice& lat, const BoundaryCycle& b, size_t limit) {
  std::set<std::vector<IntVec>> seen;
  std::vector<BoundaryCycle> out;
  for (auto& w : weyl_group(lat, limit)) {
    BoundaryCycle img;
    for (auto& d : b.classes) img.classes.push_back(act(w, d));
    img = canonical_rotation(img);
    if (seen.insert(img.classes).second) out.push_back(img);
  }
  std::sort(out.begin(), out.end(), [](const BoundaryCycle& x, const BoundaryCycle& y) { return x.classes < y.classes; });
  return out;
}

std::vector<NamedBoundary> standard_boundaries() {
  auto P2 = PicLattice::blowup(0);
  auto B1 = PicLattice::blowup(1);
  auto B2 = PicLattice::blowup(2);
  auto B3 = PicLattice::blowup(3);
  auto B4 = PicLattice::blowup(4);
  auto B5 = PicLattice::blowup(5);
  auto B8 = PicLattice::blowup(8);
  auto Q = PicLattice::quadric();
  return {
      {"p2-triangle", P2, {{iv({1}), iv({1}), iv({1})}}, true},
      {"p2-conic-line", P2, {{iv({2}), iv({1})}}, false},
      {"p2-nodal-cubic", P2, {{iv({3})}}, false},
      {"f1-square", B1, {{iv({1, -1}), iv({0, 1}), iv({1, -1}), iv({1, 0})}}, true},
      {"f1-line-conic", B1, {{iv({1, 0}), iv({2, -1})}}, false},
      {"quadric-square", Q, {{iv({1, 0}), iv({0, 1}), iv({1, 0}), iv({0, 1})}}, true},
      {"dp7-pentagon", B2, {{iv({0, 1, 0}), iv({1, -1, -1}), iv({0, 0, 1}), iv({1, 0, -1}), iv({1, -1, 0})}}, true},
      {"dp7-triangle", B2, {{iv({1, -1, 0}), iv({1, 0, -1}), iv({1, 0, 0})}}, false},
      {"dp6-hexagon",
       B3,
       {{iv({0, 1, 0, 0}), iv({1, -1, -1, 0}), iv({0, 0, 1, 0}), iv({1, 0, -1, -1}), iv({0, 0, 0, 1}),
         iv({1, -1, 0, -1})}},
       true},
      {"dp6-triangle", B3, {{iv({1, -1, 0, 0}), iv({1, 0, -1, 0}), iv({1, 0, 0, -1})}}, false},
      {"dp5-pentagon",
       B4,
       {{iv({0, 1, 0, 0, 0}), iv({1, -1, -1, 0, 0}), iv({0, 0, 1, 0, 0}), iv({1, 0, -1, -1, 0}),
         iv({1, -1, 0, 0, -1})}},
       false},
      {"dp5-square", B4, {{iv({0, 1, 0, 0, 0}), iv({1, -1, -1, 0, 0}), iv({0, 0, 1, 0, 0}), iv({2, -1, -1, -1, -1})}}, false},
      {"dp5-bigon", B4, {{iv({1, -1, 0, 0, 0}), iv({2, 0, -1, -1, -1})}}, false},
      {"dp4-square",
       B5,
       {{iv({0, 1, 0, 0, 0, 0}), iv({1, -1, -1, 0, 0, 0}), iv({0, 0, 1, 0, 0, 0}), iv({2, -1, -1, -1, -1, -1})}},
       false},
      {"dp4-pentagon",
       B5,
       {{iv({0, 1, 0, 0, 0, 0}), iv({1, -1, -1, 0, 0, 0}), iv({0, 0, 1, 0, 0, 0}), iv({1, 0, -1, -1, 0, 0}),
         iv({1, -1, 0, 0, -1, -1})}},
       false},
      {"dp4-bigon", B5, {{iv({1, -1, 0, 0, 0, 0}), iv({2, 0, -1, -1, -1, -1})}}, false},
      {"dp1-nodal", B8, {{iv({3, -1, -1, -1, -1, -1, -1, -1, -1})}}, false},
  };
}

NamedBoundary standard_boundary(const std::string& name) {
  for (auto& b : standard_boundaries())
    if (b.name == name) return b;
  throw ValidationError("unknown boundary preset '" + name + "'");
}

}  // namespace dp
