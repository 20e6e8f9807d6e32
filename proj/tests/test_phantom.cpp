#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "cradon/phantom.hpp"

using namespace cradon;

TEST_CASE("bump profile shape") {
  CHECK(bump_profile(0.0) == 1.0);
  CHECK(bump_profile(1.0) == 0.0);
  CHECK(bump_profile(2.0) == 0.0);
  CHECK(bump_profile(0.5) == doctest::Approx(0.31640625).epsilon(1e-15));
  CHECK_THROWS_AS(bump_profile(-0.1), std::invalid_argument);

  // first three one-sided derivatives vanish at s = 1
  const double h = 1e-3;
  const double d1 = (bump_profile(1.0) - bump_profile(1.0 - h)) / h;
  const double d2 = (bump_profile(1.0) - 2 * bump_profile(1.0 - h) + bump_profile(1.0 - 2 * h)) /
                    (h * h);
  const double d3 = (bump_profile(1.0) - 3 * bump_profile(1.0 - h) +
                     3 * bump_profile(1.0 - 2 * h) - bump_profile(1.0 - 3 * h)) /
                    (h * h * h);
  CHECK(std::abs(d1) < 1e-2);
  CHECK(std::abs(d2) < 1e-1);
  CHECK(std::abs(d3) < 1.0);
}

TEST_CASE("phantom evaluation and support") {
  Phantom ph;
  ph.dim = 2;
  ph.bumps = {{{0.5, 0.5, 0.0}, 0.2, 1.0}};
  CHECK(eval_phantom(ph, {0.5, 0.5, 0.0}) == 1.0);
  CHECK(eval_phantom(ph, {0.71, 0.5, 0.0}) == 0.0);
  CHECK(phantom_support_radius(ph) ==
        doctest::Approx(0.2 + std::sqrt(0.5)).epsilon(1e-15));

  Phantom two;
  two.dim = 2;
  two.bumps = {{{0.0, 0.3, 0.0}, 0.05, 1.0}, {{0.0, 0.9, 0.0}, 0.05, 1.0}};
  CHECK(phantom_support_radius(two) == doctest::Approx(0.95).epsilon(1e-15));

  // two-bump difference phantom inside bump 1 only
  const Phantom def = default_phantom_2d();
  const Vec3 x{0.40, 0.30, 0.0};
  const double d1 = dist(x, def.bumps[0].center) / def.bumps[0].radius;
  REQUIRE(d1 < 1.0);
  REQUIRE(dist(x, def.bumps[1].center) > def.bumps[1].radius);
  CHECK(eval_phantom(def, x) == doctest::Approx(bump_profile(d1)).epsilon(1e-15));

  // support containment: zero outside the support radius
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double r0 = phantom_support_radius(def);
  for (int i = 0; i < 300; ++i) {
    Vec3 p{u(rng), u(rng), 0.0};
    if (norm(p) <= r0) continue;
    CHECK(eval_phantom(def, p) == 0.0);
  }
}

TEST_CASE("phantom continuity via finite differences") {
  const Phantom ph = default_phantom_2d();
  // Lipschitz bound: sup |h'| / r = (max_s 8 s (1-s^2)^3) / r over the bumps
  double lip = 0.0;
  for (const RadialBump& b : ph.bumps) {
    double prof_max = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double s = i / 1000.0;
      const double q = 1.0 - s * s;
      prof_max = std::max(prof_max, 8.0 * s * q * q * q);
    }
    lip += std::abs(b.amplitude) * prof_max / b.radius;
  }
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.2, 1.2), ud(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Vec3 x{u(rng), u(rng), 0.0};
    Vec3 step{ud(rng), ud(rng), 0.0};
    step = (1e-4 / norm(step)) * step;
    const double df = std::abs(eval_phantom(ph, x + step) - eval_phantom(ph, x));
    CHECK(df <= lip * norm(step) * (1.0 + 1e-6) + 1e-15);
  }
}

TEST_CASE("default phantoms satisfy the containment invariant") {
  CHECK_NOTHROW(validate_phantom(default_phantom_2d(), Geometry::sector2d(3)));
  CHECK_NOTHROW(validate_phantom(default_phantom_3d(), Geometry::octant3d()));
  CHECK(phantom_support_radius(default_phantom_2d()) <= 1.0);
  CHECK(phantom_support_radius(default_phantom_3d()) <= 1.0);

  Phantom bad;
  bad.dim = 2;
  bad.bumps = {{{0.5, 0.1, 0.0}, 0.2, 1.0}};  // crosses the x1-axis ray
  CHECK_THROWS_AS(validate_phantom(bad, Geometry::sector2d(3)), std::invalid_argument);

  Phantom empty;
  empty.dim = 2;
  CHECK_THROWS_AS(validate_phantom(empty, Geometry::sector2d(3)), std::invalid_argument);

  Phantom bad3;
  bad3.dim = 3;
  bad3.bumps = {{{0.1, 0.5, 0.5}, 0.2, 1.0}};  // crosses the x = 0 face
  CHECK_THROWS_AS(validate_phantom(bad3, Geometry::octant3d()), std::invalid_argument);
}

TEST_CASE("phantom file round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cradon_phantom_test";
  fs::create_directories(dir);
  const std::string path = (dir / "ph.txt").string();

  const Phantom ph = default_phantom_3d();
  write_phantom(path, ph);
  const Phantom back = read_phantom(path, 3);
  REQUIRE(back.bumps.size() == ph.bumps.size());
  for (std::size_t i = 0; i < ph.bumps.size(); ++i) {
    CHECK(dist(back.bumps[i].center, ph.bumps[i].center) == 0.0);
    CHECK(back.bumps[i].radius == ph.bumps[i].radius);
    CHECK(back.bumps[i].amplitude == ph.bumps[i].amplitude);
  }

  // comments and blank lines are tolerated, malformed lines are not
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fprintf(f, "# two bumps\n\n0.4 0.3 0.1 1.0\n0.6 0.5 0.12 -0.5 # trailing\n");
    std::fclose(f);
  }
  const Phantom two = read_phantom(path, 2);
  REQUIRE(two.bumps.size() == 2);
  CHECK(two.bumps[1].amplitude == -0.5);
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fprintf(f, "0.4 0.3 0.1\n");
    std::fclose(f);
  }
  CHECK_THROWS_AS(read_phantom(path, 2), std::runtime_error);
  fs::remove_all(dir);
}
