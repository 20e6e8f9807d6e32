#include <doctest.h>

#include <cmath>
#include <random>

#include "cradon/phantom.hpp"
#include "cradon/symmetrize.hpp"

using namespace cradon;

namespace {

Phantom one_bump(int dim, Vec3 c, double r, double a = 1.0) {
  Phantom ph;
  ph.dim = dim;
  ph.bumps = {{c, r, a}};
  return ph;
}

}  // namespace

TEST_CASE("odd extension restricted to Q reproduces the source") {
  const Geometry geom = Geometry::sector2d(3);
  const Phantom ph = default_phantom_2d();
  const FieldEvaluator f = phantom_field(ph);
  const FieldEvaluator fo = odd_extend(f, geom);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double g = ur(rng) * geom.sector_angle();
    const Vec3 x = ur(rng) * unit2d(g);
    CHECK(fo(x) == doctest::Approx(f(x)).epsilon(1e-13));
  }
  // vanishes on the mirror lines
  for (int k = 0; k < 2 * geom.sector_order; ++k)
    for (double r : {0.2, 0.7, 1.3})
      CHECK(std::abs(fo(r * unit2d(k * geom.sector_angle()))) < 1e-14);
  // odd under the basic reflection
  for (int i = 0; i < 200; ++i) {
    const double g = ur(rng) * geom.sector_angle();
    const Vec3 x = ur(rng) * unit2d(g);
    CHECK(fo({x.x, -x.y, 0.0}) == doctest::Approx(-fo(x)).epsilon(1e-13));
  }
}

TEST_CASE("rotation invariance and odd reflections at random points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n : {2, 3, 4}) {
    const Geometry geom = Geometry::sector2d(n);
    const FieldEvaluator fo = odd_extend(phantom_field(default_phantom_2d()), geom);
    const double beta = geom.sector_angle();
    for (int i = 0; i < 100; ++i) {
      const Vec3 x{u(rng), u(rng), 0.0};
      const double base = fo(x);
      for (int k = -n; k <= n; ++k) {
        CHECK(fo(rotate2d(x, 2.0 * beta * k)) == doctest::Approx(base).epsilon(1e-12));
        Vec3 refl = rotate2d(x, 2.0 * beta * k);
        refl.y = -refl.y;
        CHECK(fo(refl) == doctest::Approx(-base).epsilon(1e-12));
      }
      // oddness across the tilted mirror at angle (2k+1) beta
      for (int k = 0; k < n; ++k) {
        const double ang = (2 * k + 1) * beta;
        const double c = std::cos(2.0 * ang), s = std::sin(2.0 * ang);
        const Vec3 m{c * x.x + s * x.y, s * x.x - c * x.y, 0.0};
        CHECK(fo(m) == doctest::Approx(-base).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("3D sign table under axis reflections") {
  const Geometry geom = Geometry::octant3d();
  const FieldEvaluator fo = odd_extend(phantom_field(default_phantom_3d()), geom);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const double base = fo(x);
    for (int mask = 1; mask < 8; ++mask) {
      const Vec3 r{(mask & 1) ? -x.x : x.x, (mask & 2) ? -x.y : x.y, (mask & 4) ? -x.z : x.z};
      const double sign = (mask == 1 || mask == 2 || mask == 4 || mask == 7) ? -1.0 : 1.0;
      CHECK(fo(r) == doctest::Approx(sign * base).epsilon(1e-12));
    }
  }
  // vanishes on the coordinate planes
  CHECK(std::abs(fo({0.0, 0.4, 0.6})) < 1e-14);
  CHECK(std::abs(fo({0.4, 0.0, 0.6})) < 1e-14);
  CHECK(std::abs(fo({0.4, 0.6, 0.0})) < 1e-14);
}

TEST_CASE("odd extension of an already odd field scales by the group order") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int n : {2, 3}) {
    const Geometry geom = Geometry::sector2d(n);
    const FieldEvaluator fo = odd_extend(phantom_field(default_phantom_2d()), geom);
    const FieldEvaluator foo = odd_extend(fo, geom);
    for (int i = 0; i < 100; ++i) {
      const Vec3 x{u(rng), u(rng), 0.0};
      CHECK(foo(x) == doctest::Approx(2.0 * n * fo(x)).epsilon(1e-12));
    }
  }
  const Geometry g3 = Geometry::octant3d();
  const FieldEvaluator fo3 = odd_extend(phantom_field(default_phantom_3d()), g3);
  const FieldEvaluator foo3 = odd_extend(fo3, g3);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    CHECK(foo3(x) == doctest::Approx(8.0 * fo3(x)).epsilon(1e-12));
  }
}

TEST_CASE("adjoint pairing via tensor-product midpoint quadrature") {
  SUBCASE("2D") {
    const Geometry geom = Geometry::sector2d(3);
    const Phantom g = one_bump(2, {0.45, 0.30, 0.0}, 0.22, 1.3);
    const Phantom h = one_bump(2, {-0.35, 0.55, 0.0}, 0.30, -0.8);
    const FieldEvaluator gf = phantom_field(g), hf = phantom_field(h);
    const FieldEvaluator go = odd_extend(gf, geom), ho = odd_extend(hf, geom);

    const double lim = 1.0;  // covers both supports and their images
    const int n = 1500;
    const double step = 2.0 * lim / n;
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec3 x{-lim + (i + 0.5) * step, -lim + (j + 0.5) * step, 0.0};
        lhs += go(x) * hf(x);
        rhs += ho(x) * gf(x);
      }
    lhs *= step * step;
    rhs *= step * step;
    CHECK(std::abs(lhs - rhs) <= 1e-7 * std::abs(rhs));
    CHECK(std::abs(rhs) > 1e-6);  // nondegenerate pairing
  }

  SUBCASE("3D") {
    const Geometry geom = Geometry::octant3d();
    const Phantom g = one_bump(3, {0.40, 0.35, 0.30}, 0.22, 0.9);
    const Phantom h = one_bump(3, {-0.30, 0.45, 0.35}, 0.28, 1.1);
    const FieldEvaluator gf = phantom_field(g), hf = phantom_field(h);
    const FieldEvaluator go = odd_extend(gf, geom), ho = odd_extend(hf, geom);

    const double lim = 0.85;
    const int n = 380;
    const double step = 2.0 * lim / n;
    const double cell = step * step * step;
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -lim + (i + 0.5) * step;
      for (int j = 0; j < n; ++j) {
        const double y = -lim + (j + 0.5) * step;
        for (int k = 0; k < n; ++k) {
          const Vec3 p{x, y, -lim + (k + 0.5) * step};
          lhs += go(p) * hf(p);
          rhs += ho(p) * gf(p);
        }
      }
    }
    lhs *= cell;
    rhs *= cell;
    CHECK(std::abs(lhs - rhs) <= 1e-6 * std::abs(rhs));
    CHECK(std::abs(rhs) > 1e-8);
  }
}
