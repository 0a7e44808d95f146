#include "dpsec/thetaalg.hpp"

#include "dpsec/parallel.hpp"

#include <algorithm>
#include <set>

namespace dp {

void ThetaElement::add(const GammaPoint& p, const IntVec& gamma, const Int& c) {
  if (c == 0) return;
  IntVec g = dp::is_zero(gamma) ? IntVec{} : gamma;
  auto key = std::make_pair(p, g);
  Int& v = terms[key];
  v += c;
  if (v == 0) terms.erase(key);
}

Int ThetaElement::coefficient(const GammaPoint& p, const IntVec& gamma) const {
  IntVec g = dp::is_zero(gamma) ? IntVec{} : gamma;
  auto it = terms.find({p, g});
  return it == terms.end() ? Int(0) : it->second;
}

ThetaElement ThetaElement::at_z_zero() const {
  ThetaElement out;
  for (auto& [k, c] : terms)
    if (k.second.empty()) out.terms[k] = c;
  return out;
}

std::string ThetaElement::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += c.get_str() + "*";
    if (!k.second.empty()) s += "z^" + dp::to_string(k.second) + "*";
    s += "theta" + dp::to_string(k.first);
  }
  return s;
}

ThetaElement operator*(const Int& c, const ThetaElement& x) {
  ThetaElement out;
  for (auto& [k, v] : x.terms) out.add(k.first, k.second, c * v);
  return out;
}

ThetaElement operator+(const ThetaElement& x, const ThetaElement& y) {
  ThetaElement out = x;
  for (auto& [k, v] : y.terms) out.add(k.first, k.second, v);
  return out;
}

ThetaElement central_product(const GammaPoint& p, const GammaPoint& q, const DiskTriangulation& t) {
  using Pre = std::pair<size_t, std::array<long, 3>>;
  std::map<Pre, Int> pre;
  for (size_t c = 0; c < t.cells.size(); ++c) {
    auto rp = cell_coords(t, c, p);
    if (rp.empty()) continue;
    auto rq = cell_coords(t, c, q);
    for (auto& x : rp)
      for (auto& y : rq) pre[{c, {x[0] + y[0], x[1] + y[1], x[2] + y[2]}}] += 1;
  }
  std::map<GammaPoint, std::vector<Pre>> by_point;
  for (auto& [k, v] : pre) by_point[from_cell_coords(t, k.first, k.second)].push_back(k);
  ThetaElement out;
  for (auto& [r, hits] : by_point) {
    std::set<Pre> all;
    for (size_t c = 0; c < t.cells.size(); ++c)
      for (auto& x : cell_coords(t, c, r)) all.insert({c, x});
    for (auto& h : hits)
      if (!all.count(h)) throw InvariantError("product lands outside the preimages of " + to_string(r));
    Int coef = pre.count(*all.begin()) ? pre[*all.begin()] : Int(0);
    for (auto& a : all) {
      Int v = pre.count(a) ? pre[a] : Int(0);
      if (v != coef)
        throw InvariantError("summed theta basis is not closed: product " + to_string(p) + "*" + to_string(q) +
                             " hits the preimages of " + to_string(r) + " unevenly");
    }
    out.add(r, {}, coef);
  }
  return out;
}

ThetaElement central_product(const ThetaElement& x, const ThetaElement& y, const DiskTriangulation& t) {
  ThetaElement out;
  for (auto& [kx, cx] : x.terms)
    for (auto& [ky, cy] : y.terms) {
      if (!kx.second.empty() || !ky.second.empty())
        throw ValidationError("central products take elements without curve classes");
      out = out + (cx * cy) * central_product(kx.first, ky.first, t);
    }
  return out;
}

UmbrellaRing umbrella_ring(const DiskTriangulation& t, int max_level, int workers) {
  if (max_level < 0) throw ValidationError("level must be nonnegative");
  UmbrellaRing r;
  r.tri = t;
  r.max_level = max_level;
  for (long m = 0; m <= max_level; ++m) {
    auto pts = gamma_points(t.n, m);
    r.basis.insert(r.basis.end(), pts.begin(), pts.end());
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < r.basis.size(); ++i)
    for (size_t j = i; j < r.basis.size(); ++j)
      if (r.basis[i].level() + r.basis[j].level() <= max_level) pairs.push_back({i, j});
  std::vector<ThetaElement> prod(pairs.size());
  parallel_for(pairs.size(), workers,
               [&](size_t k) { prod[k] = central_product(r.basis[pairs[k].first], r.basis[pairs[k].second], t); });
  for (size_t k = 0; k < pairs.size(); ++k) r.table[pairs[k]] = std::move(prod[k]);
  return r;
}

std::vector<GammaPoint> gamma_points_by_cells(const DiskTriangulation& t, long m) {
  if (m < 0) throw ValidationError("level must be nonnegative");
  std::set<GammaPoint> s;
  for (size_t c = 0; c < t.cells.size(); ++c)
    for (long x = 0; x <= m; ++x)
      for (long y = 0; x + y <= m; ++y) s.insert(from_cell_coords(t, c, {x, y, m - x - y}));
  return {s.begin(), s.end()};
}

size_t hilbert(int n, long m) { return gamma_points(n, m).size(); }

Int proj_degree(int n, long max_level) {
  if (max_level < 2) throw ValidationError("a quadratic fit needs at least three levels");
  std::vector<Rat> h;
  for (long m = 0; m <= max_level; ++m) h.push_back(Rat(long(hilbert(n, m))));
  Rat a = (h[2] - 2 * h[1] + h[0]) / 2;
  Rat b = h[1] - h[0] - a;
  Rat c = h[0];
  for (long m = 0; m <= max_level; ++m)
    if (a * m * m + b * m + c != h[m]) throw InvariantError("Hilbert function is not quadratic");
  Rat d = 2 * a;
  if (d.get_den() != 1) throw InvariantError("Proj degree is not an integer");
  return d.get_num();
}

BoundaryAlgebra boundary_algebra(int n, long m) {
  if (n < 1) throw ValidationError("cycle length must be positive");
  if (m < 0) throw ValidationError("level must be nonnegative");
  BoundaryAlgebra r;
  r.n = n;
  r.level = m;
  auto fan = make_triangulation(n);
  r.component_dims.assign(n, 0);
  std::vector<GammaPoint> bd;
  for (auto& p : gamma_points(n, m))
    if (on_boundary(p)) bd.push_back(p);
  r.total = bd.size();
  for (auto& p : bd)
    for (size_t c = 0; c < fan.cells.size(); ++c)
      for (auto& x : cell_coords(fan, c, p))
        if (x[0] == 0) ++r.component_dims[fan.cells[c].idx];
  // products of boundary points of level <= m
  std::vector<GammaPoint> low;
  for (long l = 1; l <= m; ++l)
    for (auto& p : gamma_points(n, l))
      if (on_boundary(p)) low.push_back(p);
  auto shares_edge = [&](const GammaPoint& p, const GammaPoint& q) {
    for (size_t c = 0; c < fan.cells.size(); ++c) {
      bool a = false, b = false;
      for (auto& x : cell_coords(fan, c, p)) a = a || x[0] == 0;
      for (auto& x : cell_coords(fan, c, q)) b = b || x[0] == 0;
      if (a && b) return true;
    }
    return false;
  };
  for (size_t i = 0; i < low.size(); ++i)
    for (size_t j = i; j < low.size(); ++j) {
      if (low[i].level() + low[j].level() > m) continue;
      auto prod = central_product(low[i], low[j], fan);
      bool closed = true;
      for (auto& [k, c] : prod.terms)
        if (!on_boundary(k.first)) closed = false;
      bool expect_nonzero = shares_edge(low[i], low[j]);
      if (!closed || prod.is_zero() == expect_nonzero) {
        r.products_ok = false;
        if (r.failures.size() < 10)
          r.failures.push_back(to_string(low[i]) + "*" + to_string(low[j]) + " = " + prod.to_string());
      }
    }
  return r;
}

namespace {

// Torus-fixed point of the umbrella over a vertex: theta_P -> 1 on the ray of the vertex, 0 elsewhere.
Int evaluate(const ThetaElement& x, const GammaPoint& vertex, int n) {
  Int s = 0;
  for (auto& [k, c] : x.terms) {
    const GammaPoint& p = k.first;
    bool on_ray;
    if (p.level() == 0) {
      on_ray = true;
    } else {
      long m = p.level();
      GammaPoint scaled = canonical(n, {vertex.a * m, vertex.cell, vertex.b * m, vertex.b2 * m});
      on_ray = scaled == p;
    }
    if (on_ray) s += c;
  }
  return s;
}

}  // namespace

ThetaDivisorReport theta_divisor_checks(const DiskTriangulation& t) {
  ThetaDivisorReport r;
  int n = t.n;
  r.n = n;
  auto lambda = gamma_points(n, 1);
  GammaPoint center = center_point(1);
  ThetaElement theta, theta_prime;
  for (auto& p : lambda) {
    theta.add(p, {}, 1);
    if (p != center) theta_prime.add(p, {}, 1);
  }
  std::vector<GammaPoint> vertices{center};
  for (int j = 0; j < n; ++j) vertices.push_back(vertex_point(n, j));
  for (auto& v : vertices) {
    for (auto& p : lambda)
      for (auto& q : lambda) {
        ThetaElement tp, tq;
        tp.add(p, {}, 1);
        tq.add(q, {}, 1);
        if (evaluate(central_product(p, q, t), v, n) != evaluate(tp, v, n) * evaluate(tq, v, n)) {
          r.homomorphisms_ok = false;
          if (r.failures.size() < 10)
            r.failures.push_back("evaluation at " + to_string(v) + " breaks " + to_string(p) + "*" + to_string(q));
        }
      }
  }
  for (int j = 0; j < n; ++j) {
    ++r.nodes;
    if (evaluate(theta, vertices[1 + j], n) != 0) ++r.nodes_missed;
  }
  size_t alive = 0;
  bool only_center = true;
  for (auto& p : lambda) {
    ThetaElement tp;
    tp.add(p, {}, 1);
    if (evaluate(tp, center, n) != 0) {
      ++alive;
      if (p != center) only_center = false;
    }
  }
  r.center_unique = alive == 1 && only_center;
  r.center_theta_nonzero = evaluate(theta, center, n) != 0;
  r.center_theta_prime_nonzero = evaluate(theta_prime, center, n) != 0;
  if (r.nodes_missed != r.nodes) r.failures.push_back("Theta vanishes at a node");
  if (!r.center_unique) r.failures.push_back("more than one level-1 theta survives at the cone point");
  return r;
}

ThetaElement flop_stratum_product(const PicLattice& lat, const BoundaryCycle& b, const GammaPoint& p,
                                  const GammaPoint& q, int i) {
  int n = int(b.n());
  if (n < 4) throw ValidationError("flop strata need at least four boundary components");
  if (i < 0 || i >= n) throw ValidationError("flop index out of range");
  if (lat.dot(b.classes[i], b.classes[i]) != -1) throw ValidationError("D_i is not a (-1)-curve: no flop at this index");
  if (p.level() != 1 || q.level() != 1) throw ValidationError("flop products are defined on level-1 points");
  GammaPoint cp = canonical(n, p), cq = canonical(n, q);
  auto sp = square_coords(n, i, cp);
  auto sq = square_coords(n, i, cq);
  if (!sp || !sq) return central_product(cp, cq, make_triangulation(n));
  std::array<long, 3> s{(*sp)[0] + (*sq)[0], (*sp)[1] + (*sq)[1], (*sp)[2] + (*sq)[2]};
  // convex PL height bent along the edge c-v_i with kink [D_i]
  auto psi = [](const std::array<long, 3>& x) { return std::max(0L, x[0] - x[1]); };
  long e = psi(*sp) + psi(*sq) - psi(s);
  if (e < 0) throw InvariantError("Mumford exponent is negative");
  IntVec gamma = scale(Int(e), b.classes[i]);
  if (e > 0 && !in_conic_hull(ne_generators(lat), gamma)) throw InvariantError("curve class outside NE(Y)");
  ThetaElement out;
  out.add(from_square_coords(n, i, s), gamma, 1);
  return out;
}

}  // namespace dp
