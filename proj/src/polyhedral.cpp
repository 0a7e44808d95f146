#include "dpsec/polyhedral.hpp"

#include "dpsec/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace dp {

namespace {

struct Bits {
  std::vector<uint64_t> w;
  explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & ~o.w[i]) return false;
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
};

// Orthogonal projection onto the complement of span(basis), scaled to a primitive integer vector.
class Projector {
 public:
  explicit Projector(const std::vector<IntVec>& basis) : B(basis) {
    size_t k = B.size();
    if (k == 0) return;
    // inverse of the Gram matrix by Gauss-Jordan
    std::vector<RatVec> g(k, RatVec(2 * k));
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) g[i][j] = dot(B[i], B[j]);
      g[i][k + i] = 1;
    }
    for (size_t c = 0; c < k; ++c) {
      size_t p = c;
      while (g[p][c] == 0) ++p;
      std::swap(g[p], g[c]);
      Rat inv = 1 / g[c][c];
      for (auto& e : g[c]) e *= inv;
      for (size_t i = 0; i < k; ++i) {
        if (i == c || g[i][c] == 0) continue;
        Rat f = g[i][c];
        for (size_t j = 0; j < 2 * k; ++j) g[i][j] -= f * g[c][j];
      }
    }
    Ginv.assign(k, RatVec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) Ginv[i][j] = g[i][k + j];
  }

  IntVec operator()(const IntVec& x) const {
    if (B.empty()) return primitive(x);
    size_t k = B.size();
    RatVec bx(k);
    for (size_t i = 0; i < k; ++i) bx[i] = dot(B[i], x);
    RatVec r(x.begin(), x.end());
    for (size_t i = 0; i < k; ++i) {
      Rat c = 0;
      for (size_t j = 0; j < k; ++j) c += Ginv[i][j] * bx[j];
      if (c == 0) continue;
      for (size_t t = 0; t < r.size(); ++t) r[t] -= c * B[i][t];
    }
    return clear_denominators(r);
  }

 private:
  std::vector<IntVec> B;
  std::vector<RatVec> Ginv;
};

struct DDRay {
  IntVec v;
  Bits z;
};

// Double description: generators of {y : a.y >= 0 for a in A}. Returns a
// canonical lineality basis and extreme rays modulo lineality.
void double_description(size_t d, std::vector<IntVec> A, std::vector<IntVec>& lin_out,
                        std::vector<IntVec>& rays_out) {
  std::vector<IntVec> ineqs;
  for (auto& a : A) {
    if (a.size() != d) throw ValidationError("inequality has wrong length");
    if (!is_zero(a)) ineqs.push_back(primitive(a));
  }
  std::sort(ineqs.begin(), ineqs.end());
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  size_t m = ineqs.size();

  std::vector<IntVec> lin;
  for (size_t i = 0; i < d; ++i) {
    IntVec e(d);
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<DDRay> R;
  for (size_t k = 0; k < m; ++k) {
    const IntVec& a = ineqs[k];
    size_t idx = lin.size();
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) {
        idx = i;
        break;
      }
    if (idx < lin.size()) {
      IntVec l0 = lin[idx];
      Int al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = neg(l0);
        al0 = -al0;
      }
      lin.erase(lin.begin() + idx);
      for (auto& l : lin) {
        Int al = dot(a, l);
        if (al != 0) l = primitive(sub(scale(al0, l), scale(al, l0)));
      }
      for (auto& r : R) {
        Int ar = dot(a, r.v);
        if (ar != 0) r.v = primitive(sub(scale(al0, r.v), scale(ar, l0)));
        r.z.set(k);
      }
      DDRay nr{l0, Bits(m)};
      for (size_t j = 0; j < k; ++j) nr.z.set(j);
      R.push_back(std::move(nr));
      continue;
    }
    std::vector<Int> s(R.size());
    std::vector<size_t> P, N;
    for (size_t i = 0; i < R.size(); ++i) {
      s[i] = dot(a, R[i].v);
      if (s[i] > 0) P.push_back(i);
      else if (s[i] < 0) N.push_back(i);
    }
    if (N.empty()) {
      for (size_t i = 0; i < R.size(); ++i)
        if (s[i] == 0) R[i].z.set(k);
      continue;
    }
    std::vector<DDRay> next;
    for (size_t i = 0; i < R.size(); ++i) {
      if (s[i] < 0) continue;
      DDRay r = R[i];
      if (s[i] == 0) r.z.set(k);
      next.push_back(std::move(r));
    }
    for (size_t p : P)
      for (size_t n : N) {
        Bits inter = R[p].z & R[n].z;
        bool adjacent = true;
        for (size_t t = 0; t < R.size() && adjacent; ++t) {
          if (t == p || t == n) continue;
          if (inter.subset_of(R[t].z)) adjacent = false;
        }
        if (!adjacent) continue;
        DDRay w{primitive(sub(scale(s[p], R[n].v), scale(s[n], R[p].v))), inter};
        w.z.set(k);
        next.push_back(std::move(w));
      }
    R = std::move(next);
  }
  lin_out = rref_basis(lin, d);
  Projector proj(lin_out);
  std::set<IntVec> rs;
  for (auto& r : R) {
    IntVec p = proj(r.v);
    if (!is_zero(p)) rs.insert(p);
  }
  rays_out.assign(rs.begin(), rs.end());
}

size_t infer_ambient(const std::vector<IntVec>& a, const std::vector<IntVec>& b, size_t ambient) {
  if (ambient) return ambient;
  if (!a.empty()) return a[0].size();
  if (!b.empty()) return b[0].size();
  throw ValidationError("cannot infer ambient rank of an empty cone description");
}

// Keep those of `cands` that are facet normals of the cone spanned by rays+lin.
std::vector<IntVec> irredundant_facets(const std::vector<IntVec>& cands, const std::vector<IntVec>& rays,
                                       const std::vector<IntVec>& lin, const std::vector<IntVec>& eqs,
                                       size_t dim) {
  Projector proj(eqs);
  std::set<IntVec> out;
  for (auto& a : cands) {
    IntVec f = proj(a);
    if (is_zero(f)) continue;
    std::vector<IntVec> on = lin;
    bool valid = true;
    for (auto& r : rays) {
      Int v = dot(f, r);
      if (v < 0) valid = false;
      if (v == 0) on.push_back(r);
    }
    if (!valid) continue;
    size_t d = on.empty() ? 0 : rank_of(on, f.size());
    if (d + 1 == dim) out.insert(f);
  }
  return {out.begin(), out.end()};
}

}  // namespace

bool RationalCone::contains(const IntVec& p) const {
  if (p.size() != ambient) throw ValidationError("point has wrong length");
  for (auto& e : equations)
    if (dot(e, p) != 0) return false;
  for (auto& f : facets)
    if (dot(f, p) < 0) return false;
  return true;
}

bool RationalCone::in_relative_interior(const IntVec& p) const {
  for (auto& e : equations)
    if (dot(e, p) != 0) return false;
  for (auto& f : facets)
    if (dot(f, p) <= 0) return false;
  return true;
}

bool RationalCone::contains_cone(const RationalCone& o) const {
  for (auto& g : o.generators())
    if (!contains(g)) return false;
  return true;
}

IntVec RationalCone::interior_point() const {
  IntVec s(ambient);
  for (auto& r : rays) s = add(s, r);
  return s;
}

std::vector<IntVec> RationalCone::generators() const {
  std::vector<IntVec> g = rays;
  for (auto& l : lineality) {
    g.push_back(l);
    g.push_back(neg(l));
  }
  return g;
}

RationalCone cone_from_rays(const std::vector<IntVec>& rays, const std::vector<IntVec>& lineality,
                            size_t ambient) {
  size_t d = infer_ambient(rays, lineality, ambient);
  for (auto& r : rays) {
    if (r.size() != d) throw ValidationError("ray has wrong length");
    if (is_zero(r)) throw ValidationError("zero vector given as a ray");
  }
  std::vector<IntVec> gens = rays;
  for (auto& l : lineality) {
    if (l.size() != d) throw ValidationError("lineality vector has wrong length");
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  RationalCone c;
  c.ambient = d;
  std::vector<IntVec> drays;
  double_description(d, gens, c.equations, drays);
  c.facets = drays;
  c.dim = d - c.equations.size();
  std::vector<IntVec> ker = c.equations;
  for (auto& f : c.facets) ker.push_back(f);
  c.lineality = ker.empty() ? rref_basis(std::vector<IntVec>{}, d) : rref_basis(kernel_basis(ker, d), d);
  if (ker.empty()) {
    for (size_t i = 0; i < d; ++i) {
      IntVec e(d);
      e[i] = 1;
      c.lineality.push_back(e);
    }
  }
  Projector proj(c.lineality);
  size_t pdim = c.dim - c.lineality.size();
  std::set<IntVec> rs;
  for (auto& r : rays) {
    IntVec p = proj(r);
    if (is_zero(p)) continue;
    std::vector<IntVec> on = c.equations;
    for (auto& f : c.facets)
      if (dot(f, p) == 0) on.push_back(f);
    size_t rk = on.empty() ? 0 : rank_of(on, d);
    if (d - rk == c.lineality.size() + 1 && pdim >= 1) rs.insert(p);
  }
  c.rays.assign(rs.begin(), rs.end());
  return c;
}

RationalCone cone_from_inequalities(size_t ambient, const std::vector<IntVec>& ineqs,
                                    const std::vector<IntVec>& eqs) {
  std::vector<IntVec> all = ineqs;
  for (auto& e : eqs) {
    all.push_back(e);
    all.push_back(neg(e));
  }
  RationalCone c;
  c.ambient = ambient;
  double_description(ambient, all, c.lineality, c.rays);
  std::vector<IntVec> span = c.rays;
  for (auto& l : c.lineality) span.push_back(l);
  c.dim = span.empty() ? 0 : rank_of(span, ambient);
  if (span.empty()) {
    for (size_t i = 0; i < ambient; ++i) {
      IntVec e(ambient);
      e[i] = 1;
      c.equations.push_back(e);
    }
  } else {
    c.equations = rref_basis(kernel_basis(span, ambient), ambient);
  }
  c.facets = irredundant_facets(ineqs, c.rays, c.lineality, c.equations, c.dim);
  return c;
}

RationalCone zero_cone(size_t ambient) { return cone_from_inequalities(ambient, {}, [&] {
  std::vector<IntVec> e;
  for (size_t i = 0; i < ambient; ++i) {
    IntVec v(ambient);
    v[i] = 1;
    e.push_back(v);
  }
  return e;
}()); }

RationalCone dual_cone(const RationalCone& c) {
  if (c.facets.empty() && c.equations.empty()) {
    // dual of the whole space
    return zero_cone(c.ambient);
  }
  return cone_from_rays(c.facets, c.equations, c.ambient);
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.ambient != b.ambient) throw ValidationError("intersecting cones of different ambient rank");
  std::vector<IntVec> f = a.facets, e = a.equations;
  f.insert(f.end(), b.facets.begin(), b.facets.end());
  e.insert(e.end(), b.equations.begin(), b.equations.end());
  return cone_from_inequalities(a.ambient, f, e);
}

RationalCone linear_image(const IntMat& m, const RationalCone& c) {
  std::vector<IntVec> rays, lin;
  for (auto& r : c.rays) {
    IntVec v = m * r;
    if (!is_zero(v)) rays.push_back(v);
  }
  for (auto& l : c.lineality) {
    IntVec v = m * l;
    if (!is_zero(v)) lin.push_back(v);
  }
  if (rays.empty() && lin.empty()) return zero_cone(m.rows);
  return cone_from_rays(rays, lin, m.rows);
}

std::vector<std::vector<std::vector<size_t>>> face_lattice(const RationalCone& c) {
  std::vector<std::vector<std::vector<size_t>>> out(c.dim + 1);
  std::vector<size_t> all(c.rays.size());
  std::iota(all.begin(), all.end(), 0);
  out[c.dim].push_back(all);
  size_t lo = c.lineality.size();
  for (size_t t = c.dim; t > lo; --t) {
    std::set<std::vector<size_t>> next;
    for (auto& F : out[t]) {
      for (auto& f : c.facets) {
        std::vector<size_t> S;
        for (size_t i : F)
          if (dot(f, c.rays[i]) == 0) S.push_back(i);
        if (S.size() == F.size()) continue;
        std::vector<IntVec> span = c.lineality;
        for (size_t i : S) span.push_back(c.rays[i]);
        size_t rk = span.empty() ? 0 : rank_of(span, c.ambient);
        if (rk + 1 == t) next.insert(S);
      }
    }
    out[t - 1].assign(next.begin(), next.end());
  }
  return out;
}

std::vector<RationalCone> faces(const RationalCone& c, size_t codim) {
  if (codim > c.dim) throw ValidationError("codimension exceeds cone dimension");
  auto fl = face_lattice(c);
  std::vector<RationalCone> out;
  for (auto& S : fl[c.dim - codim]) {
    std::vector<IntVec> rs;
    for (size_t i : S) rs.push_back(c.rays[i]);
    if (rs.empty() && c.lineality.empty()) out.push_back(zero_cone(c.ambient));
    else out.push_back(cone_from_rays(rs, c.lineality, c.ambient));
  }
  return out;
}

bool is_face(const RationalCone& f, const RationalCone& c) {
  if (f.ambient != c.ambient || f.lineality != c.lineality) return false;
  std::set<IntVec> cr(c.rays.begin(), c.rays.end());
  for (auto& r : f.rays)
    if (!cr.count(r)) return false;
  std::vector<const IntVec*> Z;
  for (auto& fc : c.facets) {
    bool vanish = true;
    for (auto& r : f.rays)
      if (dot(fc, r) != 0) {
        vanish = false;
        break;
      }
    if (vanish) Z.push_back(&fc);
  }
  std::vector<IntVec> G;
  for (auto& r : c.rays) {
    bool on = true;
    for (auto* z : Z)
      if (dot(*z, r) != 0) {
        on = false;
        break;
      }
    if (on) G.push_back(r);
  }
  return G == f.rays;
}

namespace {

bool same_ray_sets(const RationalCone& a, const RationalCone& b, const std::vector<IntVec>& fa,
                   const std::vector<IntVec>& fb) {
  if (a.lineality == b.lineality) return fa == fb;
  auto mk = [&](const std::vector<IntVec>& rs, const std::vector<IntVec>& lin) {
    if (rs.empty() && lin.empty()) return zero_cone(a.ambient);
    return cone_from_rays(rs, lin, a.ambient);
  };
  return mk(fa, a.lineality) == mk(fb, b.lineality);
}

std::vector<IntVec> on_hyperplane(const std::vector<IntVec>& rs, const IntVec& m) {
  std::vector<IntVec> out;
  for (auto& r : rs)
    if (dot(m, r) == 0) out.push_back(r);
  return out;
}

std::vector<IntVec> masked(const std::vector<IntVec>& rs, const std::vector<char>& m) {
  std::vector<IntVec> out;
  for (size_t i = 0; i < rs.size(); ++i)
    if (m[i]) out.push_back(rs[i]);
  return out;
}

// Per-cone data reused across many pairwise tests.
struct Prep {
  bool small = false;
  std::vector<std::vector<long>> facets, rays;
  std::vector<std::vector<char>> own_zero;  // facet k vanishes on ray i
};

bool to_small(const std::vector<IntVec>& vs, std::vector<std::vector<long>>& out) {
  out.clear();
  for (auto& v : vs) {
    std::vector<long> w;
    for (auto& e : v) {
      if (!e.fits_slong_p()) return false;
      long x = e.get_si();
      if (x > (1L << 24) || x < -(1L << 24)) return false;
      w.push_back(x);
    }
    out.push_back(std::move(w));
  }
  return true;
}

long sdot(const std::vector<long>& x, const std::vector<long>& y) {
  long s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Prep prepare(const RationalCone& c) {
  Prep p;
  // entries below 2^24 and rank <= 32 keep every dot product inside a long
  p.small = c.ambient <= 32 && to_small(c.facets, p.facets) && to_small(c.rays, p.rays);
  for (size_t k = 0; k < c.facets.size(); ++k) {
    std::vector<char> z(c.rays.size());
    for (size_t i = 0; i < c.rays.size(); ++i)
      z[i] = p.small ? sdot(p.facets[k], p.rays[i]) == 0 : dot(c.facets[k], c.rays[i]) == 0;
    p.own_zero.push_back(std::move(z));
  }
  return p;
}

struct Side {
  const RationalCone* x;
  const Prep* px;
  std::vector<std::vector<int>> other_sign;  // sign of facet k of x on ray j of y
  std::vector<char> lin_ok;                  // facet k vanishes on the lineality of y
};

Side side(const RationalCone& x, const Prep& px, const RationalCone& y, const Prep& py) {
  Side t{&x, &px, {}, {}};
  bool small = px.small && py.small;
  for (size_t k = 0; k < x.facets.size(); ++k) {
    std::vector<int> s(y.rays.size());
    for (size_t j = 0; j < y.rays.size(); ++j) {
      if (small) {
        long v = sdot(px.facets[k], py.rays[j]);
        s[j] = (v > 0) - (v < 0);
      } else {
        s[j] = sgn(dot(x.facets[k], y.rays[j]));
      }
    }
    bool ok = true;
    for (auto& l : y.lineality)
      if (dot(x.facets[k], l) != 0) ok = false;
    t.other_sign.push_back(std::move(s));
    t.lin_ok.push_back(ok);
  }
  return t;
}

// Shrink (cx, cy) by one facet of x that is <= 0 on the active rays of y.
bool shrink(const Side& t, std::vector<char>& cx, std::vector<char>& cy) {
  const auto& own = t.px->own_zero;
  for (size_t f = 0; f < own.size(); ++f) {
    if (!t.lin_ok[f]) continue;
    bool ok = true, moves = false;
    for (size_t j = 0; j < cy.size() && ok; ++j) {
      if (!cy[j]) continue;
      if (t.other_sign[f][j] > 0) ok = false;
      if (t.other_sign[f][j] < 0) moves = true;
    }
    if (!ok) continue;
    for (size_t i = 0; i < cx.size() && !moves; ++i)
      if (cx[i] && !own[f][i]) moves = true;
    if (!moves) continue;
    for (size_t i = 0; i < cx.size(); ++i) cx[i] = cx[i] && own[f][i];
    for (size_t j = 0; j < cy.size(); ++j) cy[j] = cy[j] && t.other_sign[f][j] == 0;
    return true;
  }
  return false;
}

bool meet_prepared(const RationalCone& a, const Prep& pa, const RationalCone& b, const Prep& pb) {
  if (a.ambient != b.ambient) throw ValidationError("cones of different ambient rank");
  // Lexicographic separation: each chosen facet of a is >= 0 on a and <= 0 on what is
  // left of b (negated facets of b symmetrically). A large multiple of the earlier
  // functionals plus the later ones separates, so the surviving ray sets are the faces
  // cut out by one functional in a-dual intersect (-b)-dual.
  Side ta = side(a, pa, b, pb), tb = side(b, pb, a, pa);
  bool same_lin = a.lineality == b.lineality;
  std::vector<long> match(a.rays.size(), -1);
  if (same_lin)
    for (size_t i = 0; i < a.rays.size(); ++i)
      for (size_t j = 0; j < b.rays.size(); ++j)
        if ((pa.small && pb.small) ? pa.rays[i] == pb.rays[j] : a.rays[i] == b.rays[j]) {
          match[i] = long(j);
          break;
        }
  auto equal = [&](const std::vector<char>& ca, const std::vector<char>& cb) {
    if (!same_lin) return same_ray_sets(a, b, masked(a.rays, ca), masked(b.rays, cb));
    size_t na = 0, nb = 0;
    for (size_t i = 0; i < ca.size(); ++i) {
      if (!ca[i]) continue;
      ++na;
      if (match[i] < 0 || !cb[match[i]]) return false;
    }
    for (char c : cb) nb += c != 0;
    return na == nb;
  };
  std::vector<char> ca(a.rays.size(), 1), cb(b.rays.size(), 1);
  for (;;) {
    if (equal(ca, cb)) return true;
    if (shrink(ta, ca, cb)) continue;
    if (shrink(tb, cb, ca)) continue;
    break;
  }
  std::vector<IntVec> ineqs = a.generators();
  for (auto& g : b.generators()) ineqs.push_back(neg(g));
  std::vector<IntVec> dlin, drays;
  double_description(a.ambient, ineqs, dlin, drays);
  IntVec m(a.ambient);
  for (auto& r : drays) m = add(m, r);
  return same_ray_sets(a, b, on_hyperplane(a.rays, m), on_hyperplane(b.rays, m));
}

}  // namespace

bool meet_in_common_face(const RationalCone& a, const RationalCone& b) {
  return meet_prepared(a, prepare(a), b, prepare(b));
}

LPResult lp_maximize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c) {
  size_t m = A.size(), n = c.size();
  size_t W = n + m;  // structural + artificial columns
  std::vector<RatVec> T(m, RatVec(W + 1));
  for (size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (size_t j = 0; j < n; ++j) T[i][j] = flip ? Rat(-A[i][j]) : A[i][j];
    T[i][n + i] = 1;
    T[i][W] = flip ? Rat(-b[i]) : b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;
  std::vector<bool> active(m, true);

  auto pivot = [&](size_t r, size_t col) {
    Rat inv = 1 / T[r][col];
    for (auto& e : T[r]) e *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || !active[i] || T[i][col] == 0) continue;
      Rat f = T[i][col];
      for (size_t j = 0; j <= W; ++j) T[i][j] -= f * T[r][j];
    }
    basis[r] = col;
  };
  // Bland's rule; returns false if unbounded
  auto run = [&](const RatVec& cost, size_t ncols) {
    for (;;) {
      size_t enter = ncols;
      for (size_t j = 0; j < ncols && enter == ncols; ++j) {
        bool inb = false;
        for (size_t i = 0; i < m; ++i)
          if (active[i] && basis[i] == j) inb = true;
        if (inb) continue;
        Rat rc = cost[j];
        for (size_t i = 0; i < m; ++i)
          if (active[i]) rc -= cost[basis[i]] * T[i][j];
        if (rc > 0) enter = j;
      }
      if (enter == ncols) return true;
      size_t leave = m;
      Rat best;
      for (size_t i = 0; i < m; ++i) {
        if (!active[i] || T[i][enter] <= 0) continue;
        Rat ratio = T[i][W] / T[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  };

  RatVec c1(W, 0);
  for (size_t i = 0; i < m; ++i) c1[n + i] = -1;
  run(c1, W);
  Rat phase1 = 0;
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n) phase1 -= T[i][W];
  LPResult res;
  if (phase1 != 0) return res;
  res.feasible = true;
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    size_t j = 0;
    while (j < n && T[i][j] == 0) ++j;
    if (j < n) pivot(i, j);
    else active[i] = false;  // redundant row
  }
  RatVec c2(W, 0);
  for (size_t j = 0; j < n; ++j) c2[j] = c[j];
  if (!run(c2, n)) {
    res.unbounded = true;
    return res;
  }
  res.x.assign(n, 0);
  for (size_t i = 0; i < m; ++i)
    if (active[i] && basis[i] < n) res.x[basis[i]] = T[i][W];
  res.value = 0;
  for (size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

bool in_conic_hull(const std::vector<IntVec>& gens, const IntVec& p) {
  size_t d = p.size();
  if (gens.empty()) return is_zero(p);
  std::vector<RatVec> A(d, RatVec(gens.size()));
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < d; ++i) A[i][j] = gens[j][i];
  RatVec b(p.begin(), p.end());
  return lp_maximize(A, b, RatVec(gens.size(), 0)).feasible;
}

void Fan::canonicalize() {
  std::vector<size_t> idx(cones.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
    if (cones[i].rays != cones[j].rays) return cones[i].rays < cones[j].rays;
    return cones[i].lineality < cones[j].lineality;
  });
  Fan f;
  f.ambient = ambient;
  for (size_t i : idx) f.add(cones[i], labels[i], provenance[i]);
  *this = std::move(f);
}

FanReport fan_check(const Fan& f, int workers) {
  FanReport rep;
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < f.cones.size(); ++i)
    for (size_t j = i + 1; j < f.cones.size(); ++j) pairs.emplace_back(i, j);
  std::vector<Prep> prep(f.cones.size());
  parallel_for(f.cones.size(), workers, [&](size_t i) { prep[i] = prepare(f.cones[i]); });
  std::vector<std::string> bad(pairs.size());
  parallel_for(pairs.size(), workers, [&](size_t k) {
    auto [i, j] = pairs[k];
    const auto& a = f.cones[i];
    const auto& b = f.cones[j];
    if (a == b) bad[k] = "cones " + std::to_string(i) + " and " + std::to_string(j) + " are equal";
    else if (!meet_prepared(a, prep[i], b, prep[j]))
      bad[k] = "cones " + std::to_string(i) + " (" + f.labels[i] + ") and " + std::to_string(j) + " (" +
               f.labels[j] + ") do not meet in a common face";
  });
  for (auto& s : bad)
    if (!s.empty()) rep.violations.push_back(s);
  rep.is_fan = rep.violations.empty();
  rep.is_complete = rep.is_fan && is_complete(f);
  return rep;
}

bool is_complete(const Fan& f, int probes, unsigned long seed) {
  if (f.cones.empty()) return false;
  for (auto& c : f.cones)
    if (!c.full_dimensional()) return false;
  for (size_t s = 0; s < f.cones.size(); ++s) {
    const auto& c = f.cones[s];
    for (auto& fn : c.facets) {
      std::vector<IntVec> F;
      for (auto& r : c.rays)
        if (dot(fn, r) == 0) F.push_back(r);
      size_t count = 0;
      for (auto& t : f.cones) {
        bool all = true;
        for (auto& r : F)
          if (!t.contains(r)) {
            all = false;
            break;
          }
        for (auto& l : c.lineality)
          if (all && (!t.contains(l) || !t.contains(neg(l)))) all = false;
        if (all) ++count;
      }
      if (count != 2) return false;
    }
  }
  std::mt19937_64 gen(seed);
  for (int p = 0; p < probes; ++p) {
    IntVec v(f.ambient);
    for (auto& e : v) e = long(gen() % 2001) - 1000;
    if (is_zero(v)) continue;
    bool hit = false;
    for (auto& c : f.cones)
      if (c.contains(v)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

bool union_equals(const RationalCone& hull, const std::vector<RationalCone>& members, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (members.empty()) return fail("no members");
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].dim != hull.dim) return fail("member " + std::to_string(i) + " has wrong dimension");
    if (!hull.contains_cone(members[i])) return fail("member " + std::to_string(i) + " not inside hull");
  }
  // Interior facets are matched by exact ray sets, so members must meet face to face;
  // anything else fails the certificate rather than passing it.
  std::map<std::vector<IntVec>, std::vector<size_t>> interior;
  for (size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    for (auto& fn : m.facets) {
      std::vector<IntVec> F;
      for (auto& r : m.rays)
        if (dot(fn, r) == 0) F.push_back(r);
      bool on_boundary = false;
      for (auto& h : hull.facets) {
        bool all = true;
        for (auto& x : F)
          if (dot(h, x) != 0) {
            all = false;
            break;
          }
        for (auto& l : m.lineality)
          if (all && dot(h, l) != 0) all = false;
        if (all) {
          on_boundary = true;
          break;
        }
      }
      if (on_boundary) continue;
      F.insert(F.end(), m.lineality.begin(), m.lineality.end());
      interior[F].push_back(i);
    }
  }
  for (auto& [F, owners] : interior)
    if (owners.size() != 2)
      return fail("interior facet of member " + std::to_string(owners[0]) + " lies in " +
                  std::to_string(owners.size()) + " members");
  return true;
}

bool is_coarsening(const Fan& coarse, const Fan& fine) {
  if (coarse.ambient != fine.ambient) throw ValidationError("support mismatch: different ambient rank");
  for (auto& c : fine.cones) {
    bool in = false;
    for (auto& C : coarse.cones)
      if (C.contains_cone(c)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  for (size_t k = 0; k < coarse.cones.size(); ++k) {
    std::vector<RationalCone> members;
    for (auto& c : fine.cones)
      if (coarse.cones[k].contains_cone(c)) members.push_back(c);
    std::string why;
    if (!union_equals(coarse.cones[k], members, &why))
      throw ValidationError("support mismatch at coarse cone " + std::to_string(k) + ": " + why);
  }
  return true;
}

std::vector<size_t> f_vector(const Fan& f) {
  std::vector<std::set<std::vector<IntVec>>> seen(f.ambient + 1);
  for (auto& c : f.cones) {
    auto fl = face_lattice(c);
    for (size_t d = 0; d < fl.size(); ++d)
      for (auto& S : fl[d]) {
        std::vector<IntVec> key;
        for (size_t i : S) key.push_back(c.rays[i]);
        key.insert(key.end(), c.lineality.begin(), c.lineality.end());
        seen[d].insert(key);
      }
  }
  std::vector<size_t> out;
  for (auto& s : seen) out.push_back(s.size());
  return out;
}

std::vector<std::pair<size_t, size_t>> adjacency(const Fan& f) {
  std::map<std::vector<IntVec>, std::vector<size_t>> walls;
  for (size_t i = 0; i < f.cones.size(); ++i) {
    const auto& c = f.cones[i];
    if (!c.full_dimensional()) continue;
    for (auto& fn : c.facets) {
      std::vector<IntVec> key;
      for (auto& r : c.rays)
        if (dot(fn, r) == 0) key.push_back(r);
      key.insert(key.end(), c.lineality.begin(), c.lineality.end());
      walls[key].push_back(i);
    }
  }
  std::set<std::pair<size_t, size_t>> out;
  for (auto& [k, v] : walls)
    for (size_t a = 0; a < v.size(); ++a)
      for (size_t b = a + 1; b < v.size(); ++b) out.insert({std::min(v[a], v[b]), std::max(v[a], v[b])});
  return {out.begin(), out.end()};
}

}  // namespace dp
