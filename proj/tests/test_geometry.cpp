#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cradon/geometry.hpp"

using namespace cradon;

namespace {

Vec3 random_point2d(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), 0.0};
}

Vec3 random_interior_dir(std::mt19937_64& rng, const Geometry& geom) {
  if (geom.dim == 2) {
    std::uniform_real_distribution<double> u(0.02, 0.98);
    return unit2d(u(rng) * geom.sector_angle());
  }
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vec3 w{u(rng), u(rng), u(rng)};
  return (1.0 / norm(w)) * w;
}

constexpr double kPi = M_PI;

}  // namespace

TEST_CASE("apply_symmetry matches the defining reflections and rotations") {
  const Geometry g2 = Geometry::sector2d(3);
  const Vec3 id = apply_symmetry(GroupElement::identity(), {0.3, 0.4, 0.0}, g2);
  CHECK(id.x == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(id.y == doctest::Approx(0.4).epsilon(1e-15));

  const Vec3 refl = apply_symmetry(GroupElement::reflection2d(), {1.0, 2.0, 0.0}, g2);
  CHECK(refl.x == doctest::Approx(1.0));
  CHECK(refl.y == doctest::Approx(-2.0));

  // N=3: rotation k=1 turns by 2 pi / 3.
  const Vec3 rot = apply_symmetry(GroupElement::rotation2d(1), {1.0, 0.0, 0.0}, g2);
  CHECK(rot.x == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rot.y == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));

  const Geometry g3 = Geometry::octant3d();
  const Vec3 r2 = apply_symmetry(GroupElement::axis_reflections3d(2), {1.0, 2.0, 3.0}, g3);
  CHECK(r2.x == doctest::Approx(1.0));
  CHECK(r2.y == doctest::Approx(-2.0));
  CHECK(r2.z == doctest::Approx(3.0));

  CHECK_THROWS_AS((apply_symmetry(GroupElement::identity(), {0.1, 0.2, 0.3}, g2)),
                  std::invalid_argument);
}

TEST_CASE("group law and the rotation-reflection exchange identity") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 4, 5}) {
    const Geometry geom = Geometry::sector2d(n);
    std::vector<GroupElement> elems;
    for (int k = 0; k < n; ++k) {
      elems.push_back({k, false, 0});
      elems.push_back({k, true, 0});
    }
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 x = random_point2d(rng);
      for (const GroupElement& g1 : elems)
        for (const GroupElement& g2 : elems) {
          const Vec3 seq = apply_symmetry(g2, apply_symmetry(g1, x, geom), geom);
          const Vec3 cmp = apply_symmetry(compose(g2, g1, geom), x, geom);
          CHECK(dist(seq, cmp) < 1e-12);
        }
      // reflect(rotate(x, -2 beta k)) == rotate(reflect(x), 2 beta k)
      for (int k = 0; k < n; ++k) {
        Vec3 a = rotate2d(x, -2.0 * geom.sector_angle() * k);
        a.y = -a.y;
        Vec3 b = rotate2d({x.x, -x.y, 0.0}, 2.0 * geom.sector_angle() * k);
        CHECK(dist(a, b) < 1e-12);
      }
    }
    // rotation of full order is the identity
    GroupElement acc = GroupElement::identity();
    for (int k = 0; k < n; ++k) acc = compose(GroupElement::rotation2d(1), acc, geom);
    CHECK(acc.rot == 0);
    CHECK_FALSE(acc.flip);
  }

  const Geometry g3 = Geometry::octant3d();
  for (std::uint8_t a = 0; a < 8; ++a)
    for (std::uint8_t b = 0; b < 8; ++b) {
      const GroupElement ga = GroupElement::axis_reflections3d(a);
      const GroupElement gb = GroupElement::axis_reflections3d(b);
      CHECK(compose(ga, gb, g3).axes == (a ^ b));
      CHECK(compose(gb, ga, g3).axes == (a ^ b));  // commute
    }
}

TEST_CASE("direction_family: layout, signs, sector coverage") {
  const Geometry geom = Geometry::sector2d(2);
  const Vec3 w = unit2d(0.7);  // (a, b) with a, b > 0
  const SignedDirectionFamily fam = direction_family(w, geom);
  REQUIRE(fam.elements.size() == 4);
  CHECK(fam.elements[0].sign == 1.0);
  CHECK(dist(fam.elements[0].dir, w) < 1e-15);
  CHECK(dist(fam.elements[1].dir, {-w.x, -w.y, 0.0}) < 1e-12);  // rotation by pi
  CHECK(fam.elements[1].sign == 1.0);
  CHECK(dist(fam.elements[2].dir, {w.x, -w.y, 0.0}) < 1e-12);
  CHECK(fam.elements[2].sign == -1.0);
  CHECK(dist(fam.elements[3].dir, {-w.x, w.y, 0.0}) < 1e-12);
  CHECK(fam.elements[3].sign == -1.0);

  const Geometry g3 = Geometry::octant3d();
  const Vec3 w3 = (1.0 / norm({1, 2, 3})) * Vec3{1, 2, 3};
  const SignedDirectionFamily f3 = direction_family(w3, g3);
  REQUIRE(f3.elements.size() == 8);
  CHECK(f3.elements[1].sign == -1.0);  // one negated coordinate
  CHECK(dist(f3.elements[1].dir, {-w3.x, w3.y, w3.z}) < 1e-15);
  CHECK(f3.elements[3].sign == 1.0);  // two negated coordinates
  CHECK(dist(f3.elements[3].dir, {-w3.x, -w3.y, w3.z}) < 1e-15);
  CHECK(f3.elements[7].sign == -1.0);  // three negated coordinates
  CHECK(dist(f3.elements[7].dir, {-w3.x, -w3.y, -w3.z}) < 1e-15);

  CHECK_THROWS_AS(direction_family(unit2d(0.0), geom), std::domain_error);
  CHECK_THROWS_AS(direction_family(unit2d(-0.3), geom), std::domain_error);
  CHECK_THROWS_AS((direction_family({0.0, 0.5, std::sqrt(0.75)}, g3)), std::domain_error);
}

TEST_CASE("direction_family invariants over random seeds") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const bool three_d = trial % 2 == 0;
    const Geometry geom = three_d ? Geometry::octant3d() : Geometry::sector2d(2 + trial % 5);
    const Vec3 w = random_interior_dir(rng, geom);
    const SignedDirectionFamily fam = direction_family(w, geom);
    const std::size_t expected = three_d ? 8 : 2 * static_cast<std::size_t>(geom.sector_order);
    REQUIRE(fam.elements.size() == expected);

    double sign_sum = 0.0;
    std::vector<int> sector_hits(expected, 0);
    for (const SignedDirection& e : fam.elements) {
      CHECK(std::abs(norm(e.dir) - 1.0) < 1e-14);
      sign_sum += e.sign;
      std::size_t sector;
      if (three_d) {
        sector = (e.dir.x < 0 ? 1u : 0u) | (e.dir.y < 0 ? 2u : 0u) | (e.dir.z < 0 ? 4u : 0u);
        CHECK(std::min({std::abs(e.dir.x), std::abs(e.dir.y), std::abs(e.dir.z)}) > 0.0);
      } else {
        double ang = std::atan2(e.dir.y, e.dir.x);
        if (ang < 0) ang += 2.0 * kPi;
        sector = static_cast<std::size_t>(ang / geom.sector_angle());
      }
      REQUIRE(sector < expected);
      sector_hits[sector]++;
    }
    CHECK(sign_sum == 0.0);
    for (int hits : sector_hits) CHECK(hits == 1);  // one element per sector
  }
}

TEST_CASE("alpha_bound closed form against brute force") {
  std::mt19937_64 rng(7);

  SUBCASE("2D examples") {
    CHECK(alpha_bound(unit2d(kPi / 4.0), Geometry::sector2d(2)) ==
          doctest::Approx(std::cos(kPi / 4.0)).epsilon(1e-12));
    CHECK(alpha_bound(unit2d(10.0 * kPi / 180.0), Geometry::sector2d(3)) ==
          doctest::Approx(std::cos(10.0 * kPi / 180.0)).epsilon(1e-12));
  }

  SUBCASE("3D symmetric direction") {
    const Vec3 w = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
    CHECK(alpha_bound(w, Geometry::octant3d()) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  }

  SUBCASE("brute force over sampled boundary directions") {
    // 2D boundary unit vectors: the two rays. 3D: three quarter circles.
    for (int trial = 0; trial < 40; ++trial) {
      const Geometry geom = trial % 2 ? Geometry::sector2d(2 + trial % 4) : Geometry::octant3d();
      const Vec3 w = random_interior_dir(rng, geom);
      double brute = -1.0;
      if (geom.dim == 2) {
        brute = std::max(dot(w, {1, 0, 0}), dot(w, unit2d(geom.sector_angle())));
      } else {
        const int samples = 100000 / 3;
        for (int face = 0; face < 3; ++face)
          for (int i = 0; i <= samples; ++i) {
            const double a = 0.5 * kPi * i / samples;
            Vec3 zeta{0, 0, 0};
            const int u = face == 0 ? 1 : 0, v = face == 2 ? 1 : 2;
            (u == 0 ? zeta.x : u == 1 ? zeta.y : zeta.z) = std::cos(a);
            (v == 1 ? zeta.y : zeta.z) = std::sin(a);
            brute = std::max(brute, dot(w, zeta));
          }
      }
      CHECK(alpha_bound(w, geom) == doctest::Approx(brute).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(alpha_bound(unit2d(1.2 * kPi), Geometry::sector2d(3)), std::domain_error);
}

TEST_CASE("truncation_radius arithmetic and monotonicity") {
  const Geometry g2 = Geometry::sector2d(2);
  const Vec3 mid = unit2d(kPi / 4.0);  // alpha = cos(pi/4)
  const double a = std::cos(kPi / 4.0);
  CHECK(truncation_radius(mid, 0.0, 1.0, g2) == doctest::Approx(2.0 / (1.0 - a)).epsilon(1e-12));
  CHECK(truncation_radius(mid, 0.5, 1.0, g2) == doctest::Approx(2.5 / (1.0 - a)).epsilon(1e-12));

  const Geometry g3 = Geometry::octant3d();
  const Vec3 diag = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
  CHECK(truncation_radius(diag, 0.0, 1.0, g3) ==
        doctest::Approx(2.0 / (1.0 - std::sqrt(2.0 / 3.0))).epsilon(1e-9));

  // increasing in eps, r0 and alpha
  std::mt19937_64 rng(5);
  const Geometry geom = Geometry::sector2d(3);
  for (int i = 0; i < 200; ++i) {
    std::uniform_real_distribution<double> ug(0.05, 0.95), ue(0.0, 0.4), ur(0.5, 2.0);
    const double g1 = ug(rng) * geom.sector_angle();
    const double e1 = ue(rng), r1 = ur(rng);
    const Vec3 w1 = unit2d(g1);
    CHECK(truncation_radius(w1, e1, r1, geom) < truncation_radius(w1, e1 + 0.05, r1, geom));
    CHECK(truncation_radius(w1, e1, r1, geom) < truncation_radius(w1, e1, r1 + 0.1, geom));
    // closer to the bisector = smaller alpha = smaller radius
    const double g_mid = 0.5 * geom.sector_angle();
    const double g_closer = g_mid + 0.9 * (g1 - g_mid);
    CHECK(truncation_radius(unit2d(g_closer), e1, r1, geom) <=
          truncation_radius(w1, e1, r1, geom) + 1e-12);
  }

  CHECK_THROWS_AS(truncation_radius(mid, 1.0, 0.5, g2), std::invalid_argument);
}

TEST_CASE("admissible_set geometry") {
  const Geometry g3sector = Geometry::sector2d(3);
  const AdmissibleSet adm = admissible_set(300.0, 1.0, g3sector);
  CHECK_FALSE(adm.empty);
  // paper's bound: arccos(1 - 2/300) is about 6.62 degrees
  CHECK(adm.gamma0 * 180.0 / kPi == doctest::Approx(6.62).epsilon(0.002));
  const auto iv = adm.intervals();
  REQUIRE(iv.size() == 6);
  CHECK(iv[1].first == doctest::Approx(adm.gamma0 + kPi / 3.0));
  CHECK(iv[1].second == doctest::Approx(2.0 * kPi / 3.0 - adm.gamma0));
  CHECK(adm.contains(unit2d(0.5 * kPi / 3.0)));
  CHECK_FALSE(adm.contains(unit2d(0.01)));
  CHECK(adm.contains(unit2d(kPi / 3.0 + adm.gamma0 + 0.01)));

  // R = 4 r0: gamma0 = arccos(1/2) = 60 degrees
  CHECK(admissible_set(4.0, 1.0, g3sector).gamma0 == doctest::Approx(kPi / 3.0).epsilon(1e-12));

  const AdmissibleSet a3 = admissible_set(20.0, 1.0, Geometry::octant3d());
  CHECK(a3.max_coord == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(a3.contains((1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1}));
  CHECK_FALSE(a3.contains({0.95, std::sqrt(1.0 - 0.95 * 0.95 - 0.01), 0.1}));

  const AdmissibleSet none = admissible_set(1.5, 1.0, g3sector);
  CHECK(none.empty);
  CHECK_FALSE(none.contains(unit2d(0.3)));
}

TEST_CASE("unit normalization tolerance") {
  CHECK_NOTHROW((normalize_unit({1.0 + 5e-10, 0.0, 0.0}, 2)));
  CHECK_THROWS_AS((normalize_unit({1.1, 0.0, 0.0}, 2)), std::invalid_argument);
  const Vec3 w = normalize_unit({1.0 + 5e-10, 0.0, 0.0}, 2);
  CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-15));
}
