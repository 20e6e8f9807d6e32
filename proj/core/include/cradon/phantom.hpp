#pragma once

#include <string>
#include <vector>

#include "cradon/field.hpp"
#include "cradon/geometry.hpp"
#include "cradon/vec.hpp"

namespace cradon {

// Smooth radial bump a * h(|x - c| / r) with the fixed profile below.
struct RadialBump {
  Vec3 center;
  double radius = 0.0;
  double amplitude = 1.0;
};

struct Phantom {
  int dim = 2;
  std::vector<RadialBump> bumps;
};

// h(s) = (1 - s^2)^4 on [0, 1), 0 beyond: maximum 1 at s = 0, vanishes with
// its first three derivatives at s = 1.
double bump_profile(double s);

double eval_phantom(const Phantom& ph, const Vec3& x);

// max_j (|c_j| + r_j): radius of a ball about the origin containing supp f.
double phantom_support_radius(const Phantom& ph);

FieldEvaluator phantom_field(const Phantom& ph);

// Throws std::invalid_argument unless every closed bump ball lies strictly
// inside Q (and the phantom is nonempty, radii positive).
void validate_phantom(const Phantom& ph, const Geometry& geom);

// Built-in phantoms used by the experiment presets.
Phantom default_phantom_2d();
Phantom default_phantom_3d();

// Plain text, one bump per line: cx cy [cz] radius amplitude, '#' comments.
Phantom read_phantom(const std::string& path, int dim);
void write_phantom(const std::string& path, const Phantom& ph);

}  // namespace cradon
