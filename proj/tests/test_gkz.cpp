#include "dpsec/gkz.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dp;

namespace {

std::vector<oracle::P2> to_oracle(const std::vector<Point2>& pts) {
  std::vector<oracle::P2> out;
  for (auto& p : pts) out.push_back({p[0], p[1]});
  return out;
}

const char* kToric[] = {"p2-triangle", "f1-square", "quadric-square", "dp7-pentagon", "dp6-hexagon"};

}  // namespace

TEST_CASE("unit square has two triangulations") {
  std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto all = all_triangulations(sq);
  CHECK(all.size() == 2);
  CHECK(all.size() == oracle::triangulation_count(to_oracle(sq)));
  for (auto& t : all) {
    CHECK(is_regular(sq, t));
    CHECK(t.triangles.size() == 2);
  }
  auto g = gkz_secondary_fan(sq);
  CHECK(g.triangulations.size() == 2);
  CHECK(g.fan.size() == 2);
  CHECK(fan_check(g.fan).is_complete);
}

TEST_CASE("regular triangulation from heights") {
  std::vector<Point2> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto t = regular_triangulation(sq, iv({0, 0, 1, 0}));
  REQUIRE(t.has_value());
  CHECK(secondary_cone(sq, *t).contains(iv({0, 0, 1, 0})));
  CHECK_FALSE(regular_triangulation(sq, iv({0, 0, 0, 0})).has_value());
}

TEST_CASE("triangulation counts match brute force") {
  std::vector<std::vector<Point2>> configs = {
      {{0, 0}, {2, 0}, {0, 2}, {1, 0}, {1, 1}},  // hull points on edges are rejected below
      {{0, 0}, {3, 0}, {0, 3}, {1, 1}},
      {{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}},
      {{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}, {2, 2}},
  };
  for (size_t i = 1; i < configs.size(); ++i) {
    CAPTURE(i);
    auto all = gkz_bruteforce(configs[i]);
    size_t total = all.triangulations.size() + all.irregular.size();
    CHECK(total == oracle::triangulation_count(to_oracle(configs[i])));
    CHECK(gkz_secondary_fan(configs[i]).triangulations.size() == all.triangulations.size());
  }
  CHECK_THROWS_AS(all_triangulations(configs[0]), ValidationError);
}

TEST_CASE("toric polygons close up") {
  for (const char* name : kToric) {
    CAPTURE(name);
    auto nb = standard_boundary(name);
    auto pts = toric_polygon(nb.lat, nb.cycle);
    CHECK(pts.size() == nb.cycle.n() + 1);
    CHECK(pts.size() - 3 == nb.lat.rank());
  }
  auto hex = standard_boundary("dp6-triangle");
  CHECK_THROWS_AS(toric_polygon(hex.lat, hex.cycle), ValidationError);
}

TEST_CASE("GKZ fan of the toric models matches Sec") {
  for (const char* name : kToric) {
    CAPTURE(name);
    auto nb = standard_boundary(name);
    auto pts = toric_polygon(nb.lat, nb.cycle);
    auto g = gkz_secondary_fan(pts);
    auto bf = gkz_bruteforce(pts);
    CHECK(g.triangulations == bf.triangulations);
    CHECK(bf.triangulations.size() + bf.irregular.size() == oracle::triangulation_count(to_oracle(pts)));
    auto ch = chambers(nb.lat, nb.cycle);
    auto sec = secondary_fan(nb.lat, nb.cycle, ch);
    auto cert = toric_compare(nb.lat, nb.cycle, g, sec);
    CHECK(cert.certified);
    CHECK(cert.kernel_is_affine);
    CHECK(cert.rank_identity);
    CHECK(cert.gkz_cones == sec.full.size());
    CHECK(cert.f_gkz == cert.f_sec);
  }
}

TEST_CASE("GKZ output does not depend on workers") {
  auto nb = standard_boundary("dp6-hexagon");
  auto pts = toric_polygon(nb.lat, nb.cycle);
  auto a = gkz_secondary_fan(pts, 1), b = gkz_secondary_fan(pts, 3);
  CHECK(a.triangulations == b.triangulations);
  CHECK(a.fan.cones == b.fan.cones);
}
