#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dp {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Bad input from a caller or config file. Maps to exit code 2 in the CLI.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed object broke an invariant that must hold. Maps to exit code 3.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntMat {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  static IntMat identity(size_t n);
  static IntMat from_rows(const std::vector<IntVec>& rs, size_t cols);
  static IntMat from_cols(const std::vector<IntVec>& cs, size_t rows);
  static IntMat diag(const std::vector<long>& d);

  Int& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Int& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  IntVec row(size_t i) const;
  IntVec col(size_t j) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const = default;
};

IntMat operator*(const IntMat& x, const IntMat& y);
IntVec operator*(const IntMat& m, const IntVec& v);
Int det(const IntMat& m);

struct BilinearForm {
  IntMat gram;
  explicit BilinearForm(IntMat g);
  size_t rank() const { return gram.rows; }
};

struct TorsionGroup {
  std::vector<Int> invariant_factors;  // each > 1, each divides the next
  size_t free_rank = 0;
  Int order() const;
  bool trivial() const { return invariant_factors.empty(); }
  bool operator==(const TorsionGroup& o) const = default;
};

struct SNF {
  IntMat U, D, V;  // U * m * V = D
};

SNF smith_normal_form(const IntMat& m);
TorsionGroup torsion_quotient(const std::vector<IntVec>& sub, size_t ambient_rank);
std::vector<IntVec> saturate(const std::vector<IntVec>& sub);
Int pair(const BilinearForm& form, const IntVec& x, const IntVec& y);
std::optional<IntVec> solve_integral(const IntMat& m, const IntVec& rhs);

// vector helpers
Int dot(const IntVec& x, const IntVec& y);
IntVec add(const IntVec& x, const IntVec& y);
IntVec sub(const IntVec& x, const IntVec& y);
IntVec scale(const Int& c, const IntVec& x);
IntVec neg(const IntVec& x);
bool is_zero(const IntVec& x);
Int content(const IntVec& x);
IntVec primitive(const IntVec& x);
IntVec iv(std::initializer_list<long> xs);
IntVec to_intvec(const std::vector<long>& xs);
IntVec clear_denominators(const RatVec& x);  // primitive integer multiple, sign preserved
std::string to_string(const IntVec& x);

// exact rational linear algebra
size_t rank_of(const std::vector<IntVec>& vs, size_t dim);
std::vector<IntVec> kernel_basis(const std::vector<IntVec>& rows, size_t dim);
std::vector<IntVec> rref_basis(const std::vector<IntVec>& vs, size_t dim);
std::optional<RatVec> solve_rational(const std::vector<IntVec>& cols, const IntVec& rhs);

}  // namespace dp
