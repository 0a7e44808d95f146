#include "dpsec/delpezzo.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dp;

namespace {

// library stores E_i coefficients, the oracle stores multiplicities
oracle::Cls to_cls(const IntVec& v) {
  oracle::Cls c;
  for (size_t i = 0; i < v.size(); ++i) c.push_back(i == 0 ? v[i].get_si() : -v[i].get_si());
  return c;
}

}  // namespace

TEST_CASE("(-1)-class counts match brute force") {
  const size_t frozen[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int k = 0; k <= 8; ++k) {
    CAPTURE(k);
    auto lat = PicLattice::blowup(k);
    auto got = minus_one_classes(lat);
    CHECK(got.size() == frozen[k]);
    std::vector<oracle::Cls> mine;
    for (auto& c : got) mine.push_back(to_cls(c));
    std::sort(mine.begin(), mine.end());
    CHECK(mine == oracle::minus_one_classes(k));
    for (auto& c : got) {
      CHECK(lat.dot(c, c) == -1);
      CHECK(lat.dot(c, lat.canonical) == -1);
    }
  }
}

TEST_CASE("quadric has no (-1)-classes and rank two") {
  auto q = PicLattice::quadric();
  CHECK(q.rank() == 2);
  CHECK(q.degree() == 8);
  CHECK(minus_one_classes(q).empty());
  CHECK_FALSE(q.name().empty());
}

TEST_CASE("contraction counts match clique oracle") {
  const size_t frozen[] = {0, 2, 5, 18, 76, 393, 2764};
  for (int k = 1; k <= 6; ++k) {
    CAPTURE(k);
    auto lat = PicLattice::blowup(k);
    auto cs = contractions(lat);
    CHECK(cs.size() == frozen[k]);
    std::vector<oracle::Cls> mo;
    for (auto& c : minus_one_classes(lat)) mo.push_back(to_cls(c));
    CHECK(cs.size() == oracle::disjoint_sets(mo));
  }
  CHECK_THROWS_AS(contractions(PicLattice::blowup(7)), ValidationError);
}

TEST_CASE("roots and Weyl group orders") {
  const size_t frozen[] = {0, 0, 2, 12, 120, 1920, 51840};
  for (int k = 2; k <= 6; ++k) {
    CAPTURE(k);
    auto lat = PicLattice::blowup(k);
    auto rs = roots(lat);
    for (auto& r : rs) {
      CHECK(lat.dot(r, r) == -2);
      CHECK(lat.dot(r, lat.canonical) == 0);
    }
    auto w = weyl_group(lat);
    CHECK(w.size() == frozen[k]);
    // W permutes the (-1)-classes
    auto mo = minus_one_classes(lat);
    for (auto& g : weyl_generators(lat))
      for (auto& c : mo) CHECK(std::find(mo.begin(), mo.end(), act(g, c)) != mo.end());
  }
  CHECK(roots(PicLattice::blowup(3)).size() == 8);
  CHECK(roots(PicLattice::blowup(6)).size() == 72);
}

TEST_CASE("nef and effective cones are dual") {
  for (int k = 1; k <= 5; ++k) {
    auto lat = PicLattice::blowup(k);
    auto eff = effective_cone(lat);
    auto nef = nef_cone(lat);
    for (auto& g : ne_generators(lat))
      for (auto& r : nef.rays) CHECK(lat.dot(g, r) >= 0);
    CHECK(eff.dim == int(lat.rank()));
    IntVec mk = neg(lat.canonical);
    CHECK(nef.in_relative_interior(mk));
  }
}

TEST_CASE("each Mori chamber is full dimensional") {
  auto lat = PicLattice::blowup(3);
  for (auto& c : contractions(lat)) CHECK(mori_chamber(lat, c).dim == 4);
}

TEST_CASE("boundary validation") {
  auto lat = PicLattice::blowup(3);
  auto hex = standard_boundary("dp6-hexagon");
  auto rep = validate_boundary(hex.lat, hex.cycle);
  CHECK(rep.valid);
  CHECK(std::all_of(rep.minus_one.begin(), rep.minus_one.end(), [](bool b) { return b; }));
  BoundaryCycle bad = hex.cycle;
  std::swap(bad.classes[0], bad.classes[2]);
  auto r2 = validate_boundary(lat, bad);
  CHECK_FALSE(r2.valid);
  CHECK_FALSE(r2.diagnostics.empty());
  CHECK_THROWS_AS(require_valid(lat, bad), ValidationError);
  BoundaryCycle shortc{{hex.cycle.classes[0]}};
  CHECK_FALSE(validate_boundary(lat, shortc).valid);
  CHECK_THROWS_AS(standard_boundary("no-such-boundary"), ValidationError);
}

TEST_CASE("standard boundaries are valid and sum to -K") {
  for (auto& nb : standard_boundaries()) {
    CAPTURE(nb.name);
    CHECK(validate_boundary(nb.lat, nb.cycle).valid);
    IntVec s(nb.lat.rank());
    for (auto& c : nb.cycle.classes) s = add(s, c);
    CHECK(s == neg(nb.lat.canonical));
  }
}

TEST_CASE("(-1)-cycles up to dihedral symmetry") {
  // dP6: the hexagon of all six lines is the only cycle of (-1)-classes, dP5: 12 pentagons
  // (one per 5-cycle of the Petersen complement) up to rotation and reflection
  auto c3 = minus_one_cycles(PicLattice::blowup(3));
  CHECK(c3.size() == 1);
  CHECK(c3[0].n() == 6);
  auto c4 = minus_one_cycles(PicLattice::blowup(4));
  CHECK(c4.size() == 12);
  for (auto& c : c4) CHECK(c.n() == 5);
}

TEST_CASE("Weyl images and canonical rotation") {
  auto hex = standard_boundary("dp6-hexagon");
  auto imgs = weyl_images(hex.lat, hex.cycle);
  CHECK(imgs.size() == 2);  // the two orientations of the hexagon
  BoundaryCycle rot = hex.cycle;
  std::rotate(rot.classes.begin(), rot.classes.begin() + 2, rot.classes.end());
  CHECK(canonical_rotation(rot).classes == canonical_rotation(hex.cycle).classes);
}

TEST_CASE("class names") {
  auto lat = PicLattice::blowup(2);
  CHECK(lat.class_name(iv({1, -1, -1})) == "H-E1-E2");
  CHECK(lat.class_name(iv({0, 1, 0})) == "E1");
}
