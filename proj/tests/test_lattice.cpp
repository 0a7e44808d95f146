#include "dpsec/lattice.hpp"

#include <doctest.h>

using namespace dp;

TEST_CASE("smith normal form of a small matrix") {
  IntMat m = IntMat::from_rows({iv({2, 4, 4}), iv({-6, 6, 12}), iv({10, -4, -16})}, 3);
  SNF s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.D(0, 0) == 2);
  CHECK(s.D(1, 1) == 6);
  CHECK(s.D(2, 2) == 12);
  CHECK(abs(det(s.U)) == 1);
  CHECK(abs(det(s.V)) == 1);
}

TEST_CASE("torsion of Z^2 / <(1,1), (1,-1)> is Z/2") {
  auto g = torsion_quotient({iv({1, 1}), iv({1, -1})}, 2);
  REQUIRE(g.invariant_factors.size() == 1);
  CHECK(g.invariant_factors[0] == 2);
  CHECK(g.free_rank == 0);
  CHECK(g.order() == 2);
}

TEST_CASE("quotient with free part reports both") {
  auto g = torsion_quotient({iv({2, 0, 0})}, 3);
  CHECK(g.free_rank == 2);
  REQUIRE(g.invariant_factors.size() == 1);
  CHECK(g.invariant_factors[0] == 2);
  CHECK(torsion_quotient({}, 3).free_rank == 3);
}

TEST_CASE("torsion order equals |det| for full-rank sublattices") {
  // brute force over small 2x2 matrices
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c)
        for (long d = -3; d <= 3; ++d) {
          long dt = a * d - b * c;
          if (dt == 0) continue;
          auto g = torsion_quotient({iv({a, c}), iv({b, d})}, 2);
          CHECK(g.order() == std::labs(dt));
          CHECK(g.free_rank == 0);
        }
}

TEST_CASE("saturate recovers the primitive lattice of the span") {
  auto s = saturate({iv({2, 4, 0}), iv({0, 0, 3})});
  REQUIRE(s.size() == 2);
  CHECK(torsion_quotient(s, 3).trivial());
  CHECK(rank_of(s, 3) == 2);
  CHECK(saturate({}).empty());
}

TEST_CASE("integral and rational solving") {
  IntMat m = IntMat::from_rows({iv({2, 0}), iv({0, 3})}, 2);
  CHECK(solve_integral(m, iv({4, 9})) == iv({2, 3}));
  CHECK_FALSE(solve_integral(m, iv({1, 0})).has_value());
  auto x = solve_rational({iv({1, 1}), iv({1, -1})}, iv({3, 1}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve_rational({iv({1, 0})}, iv({0, 1})).has_value());
}

TEST_CASE("kernel and rank") {
  auto k = kernel_basis({iv({1, 1, 1})}, 3);
  CHECK(k.size() == 2);
  for (auto& v : k) CHECK(dot(v, iv({1, 1, 1})) == 0);
  CHECK(rank_of({iv({1, 2}), iv({2, 4})}, 2) == 1);
}

TEST_CASE("vector helpers") {
  CHECK(primitive(iv({4, -6})) == iv({2, -3}));
  CHECK(content(iv({4, -6, 10})) == 2);
  CHECK(is_zero(iv({0, 0})));
  CHECK(clear_denominators({Rat(1, 2), Rat(-1, 3)}) == iv({3, -2}));
  CHECK(to_string(iv({1, -2})) == "(1,-2)");
}

TEST_CASE("bilinear form pairing") {
  BilinearForm f(IntMat::diag({1, -1, -1}));
  CHECK(pair(f, iv({1, 1, 0}), iv({1, 0, 1})) == 1);
  CHECK(pair(f, iv({3, 1, 1}), iv({3, 1, 1})) == 7);
  CHECK_THROWS_AS(pair(f, iv({1}), iv({1, 0, 0})), ValidationError);
}
