#include "dpsec/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace dp {

IntMat IntMat::identity(size_t n) {
  IntMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rs, size_t c) {
  IntMat m(rs.size(), c);
  for (size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].size() != c) throw ValidationError("row length mismatch");
    for (size_t j = 0; j < c; ++j) m(i, j) = rs[i][j];
  }
  return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cs, size_t r) {
  IntMat m(r, cs.size());
  for (size_t j = 0; j < cs.size(); ++j) {
    if (cs[j].size() != r) throw ValidationError("column length mismatch");
    for (size_t i = 0; i < r; ++i) m(i, j) = cs[j][i];
  }
  return m;
}

IntMat IntMat::diag(const std::vector<long>& d) {
  IntMat m(d.size(), d.size());
  for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVec IntMat::row(size_t i) const { return IntVec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

IntVec IntMat::col(size_t j) const {
  IntVec v(rows);
  for (size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMat IntMat::transpose() const {
  IntMat t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat operator*(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw ValidationError("matrix shape mismatch");
  IntMat z(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

IntVec operator*(const IntMat& m, const IntVec& v) {
  if (m.cols != v.size()) throw ValidationError("matrix/vector shape mismatch");
  IntVec r(m.rows);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) r[i] += m(i, j) * v[j];
  return r;
}

Int det(const IntMat& m) {
  if (m.rows != m.cols) throw ValidationError("det of non-square matrix");
  size_t n = m.rows;
  std::vector<Rat> a(m.a.begin(), m.a.end());
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p * n + c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      d = -d;
    }
    d *= a[c * n + c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i * n + c] == 0) continue;
      Rat f = a[i * n + c] / a[c * n + c];
      for (size_t j = c; j < n; ++j) a[i * n + j] -= f * a[c * n + j];
    }
  }
  return d.get_num();
}

BilinearForm::BilinearForm(IntMat g) : gram(std::move(g)) {
  if (gram.rows != gram.cols) throw ValidationError("gram matrix not square");
  for (size_t i = 0; i < gram.rows; ++i)
    for (size_t j = 0; j < i; ++j)
      if (gram(i, j) != gram(j, i)) throw ValidationError("gram matrix not symmetric");
}

Int TorsionGroup::order() const {
  Int o = 1;
  for (auto& f : invariant_factors) o *= f;
  return o;
}

namespace {

void swap_rows(IntMat& m, size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
void swap_cols(IntMat& m, size_t i, size_t j) {
  if (i == j) return;
  for (size_t r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
// row_i -= q * row_j
void axpy_row(IntMat& m, size_t i, size_t j, const Int& q) {
  for (size_t c = 0; c < m.cols; ++c) m(i, c) -= q * m(j, c);
}
void axpy_col(IntMat& m, size_t i, size_t j, const Int& q) {
  for (size_t r = 0; r < m.rows; ++r) m(r, i) -= q * m(r, j);
}

}  // namespace

SNF smith_normal_form(const IntMat& m) {
  IntMat D = m;
  IntMat U = IntMat::identity(m.rows);
  IntMat V = IntMat::identity(m.cols);
  size_t n = std::min(m.rows, m.cols);
  for (size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest |entry| in the trailing block; ties go to lowest row, then column
      bool found = false;
      size_t pr = 0, pc = 0;
      Int best;
      for (size_t i = t; i < D.rows; ++i)
        for (size_t j = t; j < D.cols; ++j) {
          if (D(i, j) == 0) continue;
          Int v = abs(D(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (!found) goto done;
      swap_rows(D, t, pr);
      swap_rows(U, t, pr);
      swap_cols(D, t, pc);
      swap_cols(V, t, pc);
      bool clean = true;
      for (size_t i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        axpy_row(D, i, t, q);
        axpy_row(U, i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        axpy_col(D, j, t, q);
        axpy_col(V, j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into the pivot row and retry
      bool divides = true;
      for (size_t i = t + 1; i < D.rows && divides; ++i)
        for (size_t j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            axpy_row(D, t, i, -1);
            axpy_row(U, t, i, -1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (size_t c = 0; c < D.cols; ++c) D(t, c) = -D(t, c);
      for (size_t c = 0; c < U.cols; ++c) U(t, c) = -U(t, c);
    }
  }
done:
  return {U, D, V};
}

TorsionGroup torsion_quotient(const std::vector<IntVec>& sub, size_t ambient_rank) {
  for (auto& v : sub)
    if (v.size() != ambient_rank) throw ValidationError("sublattice vector has wrong length");
  TorsionGroup g;
  if (sub.empty()) {
    g.free_rank = ambient_rank;
    return g;
  }
  SNF s = smith_normal_form(IntMat::from_cols(sub, ambient_rank));
  size_t r = 0;
  for (size_t i = 0; i < std::min(s.D.rows, s.D.cols); ++i) {
    if (s.D(i, i) == 0) break;
    ++r;
    if (s.D(i, i) > 1) g.invariant_factors.push_back(s.D(i, i));
  }
  g.free_rank = ambient_rank - r;
  return g;
}

namespace {

// Integer row echelon form with positive pivots, entries above pivots reduced.
std::vector<IntVec> hnf_rows(std::vector<IntVec> rows, size_t dim) {
  size_t r = 0;
  for (size_t c = 0; c < dim && r < rows.size(); ++c) {
    for (;;) {
      size_t p = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
      if (p == rows.size()) goto next_col;
      std::swap(rows[r], rows[p]);
      bool clean = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      for (size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  next_col:;
  }
  rows.resize(r);
  return rows;
}

// Z-basis of {x in Z^dim : A x = 0}
std::vector<IntVec> integer_kernel(const std::vector<IntVec>& A, size_t dim) {
  std::vector<IntVec> out;
  if (A.empty()) {
    for (size_t i = 0; i < dim; ++i) {
      IntVec e(dim);
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  SNF s = smith_normal_form(IntMat::from_rows(A, dim));
  size_t r = 0;
  while (r < std::min(s.D.rows, s.D.cols) && s.D(r, r) != 0) ++r;
  for (size_t j = r; j < dim; ++j) out.push_back(s.V.col(j));
  return out;
}

}  // namespace

std::vector<IntVec> saturate(const std::vector<IntVec>& sub) {
  if (sub.empty()) return {};
  size_t dim = sub[0].size();
  if (rank_of(sub, dim) == 0) return {};
  auto perp = kernel_basis(sub, dim);
  return hnf_rows(integer_kernel(perp, dim), dim);
}

Int pair(const BilinearForm& form, const IntVec& x, const IntVec& y) {
  size_t n = form.rank();
  if (x.size() != n || y.size() != n) throw ValidationError("pairing length mismatch");
  Int s = 0;
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < n; ++j)
      if (y[j] != 0) s += x[i] * form.gram(i, j) * y[j];
  }
  return s;
}

std::optional<IntVec> solve_integral(const IntMat& m, const IntVec& rhs) {
  if (rhs.size() != m.rows) throw ValidationError("rhs length mismatch");
  SNF s = smith_normal_form(m);
  IntVec b = s.U * rhs;
  IntVec y(m.cols);
  size_t n = std::min(m.rows, m.cols);
  for (size_t i = 0; i < m.rows; ++i) {
    Int d = i < n ? s.D(i, i) : Int(0);
    if (d == 0) {
      if (b[i] != 0) return std::nullopt;
      continue;
    }
    if (b[i] % d != 0) return std::nullopt;
    y[i] = b[i] / d;
  }
  return s.V * y;
}

Int dot(const IntVec& x, const IntVec& y) {
  if (x.size() != y.size()) throw ValidationError("dot length mismatch");
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

IntVec add(const IntVec& x, const IntVec& y) {
  IntVec r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

IntVec sub(const IntVec& x, const IntVec& y) {
  IntVec r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

IntVec scale(const Int& c, const IntVec& x) {
  IntVec r(x);
  for (auto& e : r) e *= c;
  return r;
}

IntVec neg(const IntVec& x) { return scale(-1, x); }

bool is_zero(const IntVec& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& e) { return e == 0; });
}

Int content(const IntVec& x) {
  Int g = 0;
  for (auto& e : x) g = gcd(g, e);
  return g;
}

IntVec primitive(const IntVec& x) {
  Int g = content(x);
  if (g == 0) return x;
  IntVec r(x);
  for (auto& e : r) e /= g;
  return r;
}

IntVec iv(std::initializer_list<long> xs) {
  IntVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

IntVec to_intvec(const std::vector<long>& xs) {
  IntVec r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

IntVec clear_denominators(const RatVec& x) {
  Int l = 1;
  for (auto& e : x) l = lcm(l, e.get_den());
  IntVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = Rat(x[i] * l).get_num();
  return primitive(r);
}

std::string to_string(const IntVec& x) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].get_str();
  os << ")";
  return os.str();
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<size_t> rref(std::vector<RatVec>& m, size_t dim) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < dim && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rat inv = 1 / m[r][c];
    for (auto& e : m[r]) e *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = 0; j < dim; ++j) m[i][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  m.resize(r);
  return piv;
}

std::vector<RatVec> to_rat(const std::vector<IntVec>& vs) {
  std::vector<RatVec> m;
  for (auto& v : vs) m.emplace_back(v.begin(), v.end());
  return m;
}

}  // namespace

size_t rank_of(const std::vector<IntVec>& vs, size_t dim) {
  auto m = to_rat(vs);
  return rref(m, dim).size();
}

std::vector<IntVec> kernel_basis(const std::vector<IntVec>& rows, size_t dim) {
  auto m = to_rat(rows);
  auto piv = rref(m, dim);
  std::vector<bool> is_piv(dim, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<IntVec> out;
  for (size_t f = 0; f < dim; ++f) {
    if (is_piv[f]) continue;
    RatVec v(dim);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    out.push_back(clear_denominators(v));
  }
  return out;
}

std::vector<IntVec> rref_basis(const std::vector<IntVec>& vs, size_t dim) {
  auto m = to_rat(vs);
  rref(m, dim);
  std::vector<IntVec> out;
  for (auto& r : m) out.push_back(clear_denominators(r));
  return out;
}

std::optional<RatVec> solve_rational(const std::vector<IntVec>& cols, const IntVec& rhs) {
  size_t n = rhs.size(), k = cols.size();
  // augmented system: rows are equations
  std::vector<RatVec> m(n, RatVec(k + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) m[i][j] = cols[j][i];
    m[i][k] = rhs[i];
  }
  auto piv = rref(m, k + 1);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  RatVec x(k);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m[i][k];
  return x;
}

}  // namespace dp
