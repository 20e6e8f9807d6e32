#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cradon/vec.hpp"

namespace cradon {

// Measurement domain: in 2D an open angular sector of opening pi/N between
// the positive x1-axis and the ray at that angle; in 3D the open first
// octant. The sector opening is always derived from the order N.
struct Geometry {
  int dim = 2;
  int sector_order = 2;  // N, 2D only; the opening angle is pi/N

  static Geometry sector2d(int order);
  static Geometry octant3d();

  double sector_angle() const;  // pi / sector_order (2D)
};

// Element of the domain's reflection/rotation group.
// 2D: rotation by 2*(pi/N)*rot, optionally followed by the reflection
//     (x1, x2) -> (x1, -x2). 3D: subset of axis reflections, bit i of
//     `axes` negates coordinate i.
struct GroupElement {
  int rot = 0;
  bool flip = false;
  std::uint8_t axes = 0;

  static GroupElement identity() { return {}; }
  static GroupElement rotation2d(int k) { return {k, false, 0}; }
  static GroupElement reflection2d() { return {0, true, 0}; }
  static GroupElement axis_reflections3d(std::uint8_t mask) { return {0, false, mask}; }

  int parity3d() const;  // number of reflected axes
};

Vec3 apply_symmetry(const GroupElement& g, const Vec3& x, const Geometry& geom);
// Composition g2 after g1.
GroupElement compose(const GroupElement& g2, const GroupElement& g1, const Geometry& geom);

// One term of the odd plane-wave combination: a sign and a unit direction.
struct SignedDirection {
  double sign = 1.0;
  Vec3 dir;
};

// All rotated/reflected copies of a seed direction with their parity signs.
// 2D: 2N elements, one per sector of the cross; 3D: 8, one per octant.
// Element 0 is the seed itself with sign +1.
struct SignedDirectionFamily {
  Geometry geom;
  std::vector<SignedDirection> elements;
};

// Normalizes omega if its length is within 1e-9 of 1, otherwise throws
// std::invalid_argument (silent drift would corrupt long pipelines).
Vec3 normalize_unit(const Vec3& omega, int dim);

// Angular distance (radians) from a unit direction to the boundary set:
// the Coxeter cross lines in 2D, coordinate planes in 3D. Positive inside Q.
double interior_margin(const Vec3& omega, const Geometry& geom);

// True if omega points strictly inside Q (margin above 1e-9 rad).
bool is_strictly_interior(const Vec3& omega, const Geometry& geom);

SignedDirectionFamily direction_family(const Vec3& omega, const Geometry& geom);

// alpha(omega) = max over boundary unit vectors zeta of omega . zeta.
// 2D closed form: max(cos g, cos(beta - g)); 3D: max_i sqrt(1 - w_i^2).
double alpha_bound(const Vec3& omega, const Geometry& geom);

// (eps + 2 r0) / (1 - alpha(omega)): beyond this boundary radius the
// reconstruction integrand for direction omega vanishes identically.
double truncation_radius(const Vec3& omega, double eps, double r0, const Geometry& geom);

// Directions whose projections are exactly recoverable from boundary data
// truncated at radius R, for sources supported in B(0, r0).
struct AdmissibleSet {
  Geometry geom;
  bool empty = false;
  double gamma0 = 0.0;     // 2D margin angle arccos(1 - 2 r0 / R)
  double max_coord = 0.0;  // 3D bound 1 - 2 r0 / R on max_i |omega_i|

  bool contains(const Vec3& omega) const;
  // 2D: the 2N admissible arcs [gamma0 + k*beta, (k+1)*beta - gamma0].
  std::vector<std::pair<double, double>> intervals() const;
};

AdmissibleSet admissible_set(double R, double r0, const Geometry& geom);

}  // namespace cradon
