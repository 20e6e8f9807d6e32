#include "cradon/phantom.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cradon {

double bump_profile(double s) {
  if (s < 0.0) throw std::invalid_argument("bump_profile: negative argument");
  if (s >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double q2 = q * q;
  return q2 * q2;
}

double eval_phantom(const Phantom& ph, const Vec3& x) {
  double acc = 0.0;
  for (const RadialBump& b : ph.bumps) {
    const double d = dist(x, b.center);
    if (d < b.radius) acc += b.amplitude * bump_profile(d / b.radius);
  }
  return acc;
}

double phantom_support_radius(const Phantom& ph) {
  double r0 = 0.0;
  for (const RadialBump& b : ph.bumps) r0 = std::max(r0, norm(b.center) + b.radius);
  return r0;
}

FieldEvaluator phantom_field(const Phantom& ph) {
  FieldEvaluator f;
  f.dim = ph.dim;
  f.support_radius = phantom_support_radius(ph);
  f.fn = [ph](const Vec3& x) { return eval_phantom(ph, x); };
  return f;
}

namespace {

// Signed distance from a 2D point to the nearer sector boundary ray.
double sector_clearance(const Vec3& c, double beta) {
  const double to_axis = c.y;  // ray at angle 0
  const double to_ray = c.x * std::sin(beta) - c.y * std::cos(beta);
  // Both signed distances are positive only when the point is inside.
  return std::min(to_axis, to_ray);
}

}  // namespace

void validate_phantom(const Phantom& ph, const Geometry& geom) {
  if (ph.dim != geom.dim) throw std::invalid_argument("phantom: dimension mismatch");
  if (ph.bumps.empty()) throw std::invalid_argument("phantom: needs at least one bump");
  for (const RadialBump& b : ph.bumps) {
    if (b.radius <= 0.0) throw std::invalid_argument("phantom: bump radius must be positive");
    double clearance;
    if (geom.dim == 2) {
      clearance = sector_clearance(b.center, geom.sector_angle());
    } else {
      clearance = std::min({b.center.x, b.center.y, b.center.z});
    }
    if (clearance <= b.radius)
      throw std::invalid_argument("phantom: bump ball is not strictly inside the domain");
  }
}

Phantom default_phantom_2d() {
  Phantom ph;
  ph.dim = 2;
  ph.bumps = {{{0.45, 0.35, 0.0}, 0.20, 1.0}, {{0.70, 0.48, 0.0}, 0.14, -1.0}};
  return ph;
}

Phantom default_phantom_3d() {
  Phantom ph;
  ph.dim = 3;
  ph.bumps = {{{0.35, 0.40, 0.30}, 0.18, 1.0},
              {{0.60, 0.25, 0.30}, 0.14, 1.0},
              {{0.28, 0.50, 0.60}, 0.16, 1.0},
              {{0.52, 0.35, 0.60}, 0.12, 1.0}};
  return ph;
}

Phantom read_phantom(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open phantom file: " + path);
  Phantom ph;
  ph.dim = dim;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    RadialBump b;
    if (!(ls >> b.center.x)) continue;  // blank / comment-only line
    bool ok = static_cast<bool>(ls >> b.center.y);
    if (ok && dim == 3) ok = static_cast<bool>(ls >> b.center.z);
    if (ok) ok = static_cast<bool>(ls >> b.radius >> b.amplitude);
    double extra;
    if (!ok || (ls >> extra))
      throw std::runtime_error("phantom file: malformed line " + std::to_string(lineno));
    ph.bumps.push_back(b);
  }
  if (ph.bumps.empty()) throw std::runtime_error("phantom file: no bumps in " + path);
  return ph;
}

void write_phantom(const std::string& path, const Phantom& ph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write phantom file: " + path);
  out << "# cx cy " << (ph.dim == 3 ? "cz " : "") << "radius amplitude\n";
  char buf[256];
  for (const RadialBump& b : ph.bumps) {
    if (ph.dim == 3)
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g\n", b.center.x, b.center.y,
                    b.center.z, b.radius, b.amplitude);
    else
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", b.center.x, b.center.y, b.radius,
                    b.amplitude);
    out << buf;
  }
}

}  // namespace cradon
