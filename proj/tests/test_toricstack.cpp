#include "dpsec/secfan.hpp"
#include "dpsec/toricstack.hpp"

#include <doctest.h>

#include <map>

using namespace dp;

namespace {

BundleInput half_plane_example(long scale_L) {
  BundleInput in;
  in.delta.ambient = 2;
  in.delta.add(cone_from_rays({iv({1, 1}), iv({1, -1})}), "s", "");
  in.sub.ambient = 2;
  in.sub.add(cone_from_rays({iv({1, -1})}, {}, 2), "r", "");
  in.L = {iv({scale_L, scale_L})};
  return in;
}

Int max_order(const StabilizerReport& r) {
  Int best = 1;
  for (auto& e : r.entries)
    if (e.group.order() > best) best = e.group.order();
  return best;
}

BundleInput product_example() {
  BundleInput p;
  p.delta.ambient = 2;
  for (int a : {1, -1})
    for (int b : {1, -1}) p.delta.add(cone_from_rays({iv({a, 0}), iv({0, b})}), "q", "");
  p.sub.ambient = 2;
  p.sub.add(cone_from_rays({iv({0, 1})}, {}, 2), "", "");
  p.sub.add(cone_from_rays({iv({0, -1})}, {}, 2), "", "");
  p.L = {iv({1, 0})};
  return p;
}

QuotientData product_quotient() {
  QuotientData q;
  q.proj = IntMat::from_rows({iv({0, 1})}, 2);
  q.delta_L.ambient = 1;
  q.delta_L.add(cone_from_rays({iv({1})}, {}, 1), "", "");
  q.delta_L.add(cone_from_rays({iv({-1})}, {}, 1), "", "");
  q.delta_bar = q.delta_L;
  return q;
}

}  // namespace

TEST_CASE("cone over (1,1), (1,-1) with L spanned by (1,1)") {
  auto in = half_plane_example(1);
  auto cert = decompose(in);
  REQUIRE(cert.ok);
  REQUIRE(cert.splits.size() == 1);
  CHECK(cert.splits[0].sigma1.rays == std::vector<IntVec>{iv({1, 1})});
  CHECK(cert.splits[0].sigma2.rays == std::vector<IntVec>{iv({1, -1})});
  CHECK(cert.delta_L.size() == 1);
  auto st = stabilizers(in, cert);
  // N / (Z(1,1) + Z(1,-1)) = Z/2 at the torus fixed point, by the 2x2 determinant
  CHECK(max_order(st) == 2);
  CHECK(st.nontrivial == 1);
  auto tilde = build_tilde(in, cert);
  CHECK(tilde.ambient == 3);
  CHECK(tilde.size() == 1);
  CHECK(fan_check(tilde).is_fan);
}

TEST_CASE("doubling L doubles the stabilizer") {
  auto in = half_plane_example(2);
  auto cert = decompose(in);
  REQUIRE(cert.ok);
  auto st = stabilizers(in, cert);
  CHECK(max_order(st) == 4);
  // Z(2,2) spans a non-saturated lattice; the ray alone already carries Z/2
  size_t ray_only = 0;
  for (auto& e : st.entries)
    if (e.tau2.dim == 0 && e.tau1.dim == 1) {
      ++ray_only;
      CHECK(e.group.order() == 2);
    }
  CHECK(ray_only == 1);
}

TEST_CASE("L coordinates") {
  auto x = l_coordinates({iv({2, 2, 0}), iv({0, 0, 1})}, iv({1, 1, 3}));
  CHECK(x == RatVec{Rat(1, 2), Rat(3)});
  CHECK_THROWS_AS(l_coordinates({iv({1, 0})}, iv({0, 1})), ValidationError);
}

TEST_CASE("product fan with quotient data") {
  auto p = product_example();
  auto bc = check_bundle(p, product_quotient());
  CHECK(bc.ok);
  CHECK(bc.decomposes);
  CHECK(bc.lifts);
  CHECK(bc.failures.empty());
  auto cert = decompose(p);
  auto st = stabilizers(p, cert);
  CHECK(st.nontrivial == 0);
  CHECK(character_extends(p.L, cert, iv({0})));
  CHECK_FALSE(character_extends(p.L, cert, iv({1})));  // delta_L is complete
}

TEST_CASE("a broken lift is reported with the offending cones") {
  auto p = product_example();
  p.sub.cones.pop_back();
  p.sub.labels.pop_back();
  p.sub.provenance.pop_back();
  auto bc = check_bundle(p, product_quotient());
  CHECK_FALSE(bc.ok);
  REQUIRE_FALSE(bc.failures.empty());
  bool names_cone = false;
  for (auto& f : bc.failures)
    if (f.find("cone") != std::string::npos) names_cone = true;
  CHECK(names_cone);
}

TEST_CASE("a cone that does not split fails the decomposition") {
  BundleInput in;
  in.delta.ambient = 2;
  in.delta.add(cone_from_rays({iv({1, 0}), iv({0, 1})}), "", "");
  in.sub.ambient = 2;
  in.L = {iv({1, 1})};
  auto cert = decompose(in);
  CHECK_FALSE(cert.ok);
  CHECK_FALSE(cert.failures.empty());
  CHECK_THROWS_AS(build_tilde(in, cert), ValidationError);
  CHECK_FALSE(check_bundle(in).ok);
}

TEST_CASE("Sec over MovSec with L spanned by K") {
  struct Row {
    const char* name;
    size_t strata, nontrivial, doubled;
  };
  for (Row r : {Row{"dp6-hexagon", 155, 17, 45}, Row{"dp5-pentagon", 273, 35, 121}, Row{"dp5-bigon", 163, 20, 81}}) {
    CAPTURE(r.name);
    auto nb = standard_boundary(r.name);
    auto ch = chambers(nb.lat, nb.cycle);
    auto sec = secondary_fan(nb.lat, nb.cycle, ch);
    BundleInput in;
    in.delta = sec.full;
    in.sub.ambient = sec.full.ambient;
    for (auto& g : sec.groups) in.sub.add(g.cone, "", "");
    in.L = {nb.lat.canonical};
    auto cert = decompose(in);
    CHECK(cert.ok);
    auto st = stabilizers(in, cert);
    CHECK(st.entries.size() == r.strata);
    CHECK(st.nontrivial == r.nontrivial);
    CHECK(fan_check(build_tilde(in, cert)).is_fan);
    CHECK(check_bundle(in).ok);
    if (std::string(r.name) == "dp6-hexagon") {
      std::map<Int, size_t> by_order;
      for (auto& e : st.entries)
        if (!e.group.trivial()) by_order[e.group.order()]++;
      CHECK(by_order == std::map<Int, size_t>{{Int(2), 15}, {Int(3), 2}});
    }
    in.L = {scale(Int(2), nb.lat.canonical)};
    CHECK(stabilizers(in, decompose(in)).nontrivial == r.doubled);
  }
}

TEST_CASE("decomposition does not depend on workers") {
  auto nb = standard_boundary("dp5-pentagon");
  auto ch = chambers(nb.lat, nb.cycle);
  auto sec = secondary_fan(nb.lat, nb.cycle, ch);
  BundleInput in;
  in.delta = sec.full;
  in.sub.ambient = sec.full.ambient;
  for (auto& g : sec.groups) in.sub.add(g.cone, "", "");
  in.L = {nb.lat.canonical};
  auto a = decompose(in, 1), b = decompose(in, 3);
  REQUIRE(a.splits.size() == b.splits.size());
  for (size_t i = 0; i < a.splits.size(); ++i) {
    CHECK(a.splits[i].sigma1 == b.splits[i].sigma1);
    CHECK(a.splits[i].sigma2 == b.splits[i].sigma2);
  }
  CHECK(a.delta_L == b.delta_L);
}
