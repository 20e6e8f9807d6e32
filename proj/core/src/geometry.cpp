#include "cradon/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace cradon {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kInteriorTol = 1e-9;

int mod_positive(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Geometry Geometry::sector2d(int order) {
  if (order < 2) throw std::invalid_argument("Geometry: sector order must be >= 2");
  Geometry g;
  g.dim = 2;
  g.sector_order = order;
  return g;
}

Geometry Geometry::octant3d() {
  Geometry g;
  g.dim = 3;
  g.sector_order = 0;
  return g;
}

double Geometry::sector_angle() const {
  if (dim != 2) throw std::logic_error("sector_angle: 2D geometry only");
  return M_PI / sector_order;
}

int GroupElement::parity3d() const { return std::popcount(axes); }

Vec3 apply_symmetry(const GroupElement& g, const Vec3& x, const Geometry& geom) {
  if (geom.dim == 2) {
    if (x.z != 0.0) throw std::invalid_argument("apply_symmetry: 2D point with nonzero z");
    Vec3 r = rotate2d(x, 2.0 * geom.sector_angle() * g.rot);
    if (g.flip) r.y = -r.y;
    return r;
  }
  Vec3 r = x;
  if (g.axes & 1u) r.x = -r.x;
  if (g.axes & 2u) r.y = -r.y;
  if (g.axes & 4u) r.z = -r.z;
  return r;
}

GroupElement compose(const GroupElement& g2, const GroupElement& g1, const Geometry& geom) {
  GroupElement out;
  if (geom.dim == 2) {
    // Elements act as flip^f o rot^k; rot^k o flip = flip o rot^-k.
    out.flip = g1.flip != g2.flip;
    out.rot = mod_positive(g1.flip ? g1.rot - g2.rot : g1.rot + g2.rot, geom.sector_order);
  } else {
    out.axes = g1.axes ^ g2.axes;
  }
  return out;
}

Vec3 normalize_unit(const Vec3& omega, int dim) {
  Vec3 w = omega;
  if (dim == 2) w.z = 0.0;
  const double len = norm(w);
  if (std::abs(len - 1.0) > kUnitTol)
    throw std::invalid_argument("direction is not a unit vector");
  return (1.0 / len) * w;
}

double interior_margin(const Vec3& omega, const Geometry& geom) {
  if (geom.dim == 2) {
    const double beta = geom.sector_angle();
    const double gamma = std::atan2(omega.y, omega.x);
    // Distance to the nearest cross line (lines at angles k*beta).
    const double frac = gamma / beta - std::floor(gamma / beta);
    return std::min(frac, 1.0 - frac) * beta;
  }
  const double m = std::min({omega.x, omega.y, omega.z});
  return std::asin(std::clamp(m, -1.0, 1.0));
}

bool is_strictly_interior(const Vec3& omega, const Geometry& geom) {
  if (geom.dim == 2) {
    const double gamma = std::atan2(omega.y, omega.x);
    if (gamma <= 0.0 || gamma >= geom.sector_angle()) return false;
  } else if (omega.x <= 0.0 || omega.y <= 0.0 || omega.z <= 0.0) {
    return false;
  }
  return interior_margin(omega, geom) > kInteriorTol;
}

SignedDirectionFamily direction_family(const Vec3& omega, const Geometry& geom) {
  const Vec3 w = normalize_unit(omega, geom.dim);
  if (!is_strictly_interior(w, geom))
    throw std::domain_error("direction_family: seed direction must lie strictly inside Q");

  SignedDirectionFamily fam;
  fam.geom = geom;
  if (geom.dim == 2) {
    const int n = geom.sector_order;
    const double beta = geom.sector_angle();
    fam.elements.reserve(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) fam.elements.push_back({+1.0, rotate2d(w, -2.0 * beta * k)});
    for (int k = 0; k < n; ++k) {
      Vec3 v = rotate2d(w, -2.0 * beta * k);
      v.y = -v.y;
      fam.elements.push_back({-1.0, v});
    }
  } else {
    fam.elements.reserve(8);
    for (std::uint8_t mask = 0; mask < 8; ++mask) {
      const GroupElement g = GroupElement::axis_reflections3d(mask);
      const double sign = (g.parity3d() % 2 == 0) ? +1.0 : -1.0;
      fam.elements.push_back({sign, apply_symmetry(g, w, geom)});
    }
  }
  return fam;
}

double alpha_bound(const Vec3& omega, const Geometry& geom) {
  const Vec3 w = normalize_unit(omega, geom.dim);
  if (!is_strictly_interior(w, geom))
    throw std::domain_error("alpha_bound: direction must lie strictly inside Q");
  if (geom.dim == 2) {
    const double beta = geom.sector_angle();
    const double gamma = std::atan2(w.y, w.x);
    return std::max(std::cos(gamma), std::cos(beta - gamma));
  }
  const double m = std::min({w.x, w.y, w.z});
  return std::sqrt(std::max(0.0, 1.0 - m * m));
}

double truncation_radius(const Vec3& omega, double eps, double r0, const Geometry& geom) {
  if (r0 <= 0.0 || eps < 0.0 || r0 <= eps)
    throw std::invalid_argument("truncation_radius: need r0 > eps >= 0");
  const double a = alpha_bound(omega, geom);
  if (a >= 1.0) throw std::domain_error("truncation_radius: direction touches the boundary");
  return (eps + 2.0 * r0) / (1.0 - a);
}

bool AdmissibleSet::contains(const Vec3& omega) const {
  if (empty) return false;
  const Vec3 w = normalize_unit(omega, geom.dim);
  if (geom.dim == 2) {
    const double beta = geom.sector_angle();
    double gamma = std::atan2(w.y, w.x);
    if (gamma < 0.0) gamma += 2.0 * M_PI;
    const double frac = gamma / beta - std::floor(gamma / beta);
    const double d = std::min(frac, 1.0 - frac) * beta;
    return d >= gamma0;
  }
  const double m = std::max({std::abs(w.x), std::abs(w.y), std::abs(w.z)});
  return m <= max_coord;
}

std::vector<std::pair<double, double>> AdmissibleSet::intervals() const {
  std::vector<std::pair<double, double>> out;
  if (geom.dim != 2 || empty) return out;
  const double beta = geom.sector_angle();
  for (int k = 0; k < 2 * geom.sector_order; ++k)
    out.emplace_back(gamma0 + k * beta, (k + 1) * beta - gamma0);
  return out;
}

AdmissibleSet admissible_set(double R, double r0, const Geometry& geom) {
  if (r0 <= 0.0) throw std::invalid_argument("admissible_set: r0 must be positive");
  AdmissibleSet s;
  s.geom = geom;
  if (R <= 2.0 * r0) {
    s.empty = true;
    return s;
  }
  const double bound = 1.0 - 2.0 * r0 / R;
  s.gamma0 = std::acos(bound);
  s.max_coord = bound;
  return s;
}

}  // namespace cradon
