#include "cradon/symmetrize.hpp"

#include <stdexcept>

namespace cradon {

FieldEvaluator odd_extend(const FieldEvaluator& f, const Geometry& geom) {
  if (f.dim != geom.dim) throw std::invalid_argument("odd_extend: dimension mismatch");

  FieldEvaluator out;
  out.dim = f.dim;
  out.support_radius = f.support_radius;  // the group is orthogonal

  if (geom.dim == 2) {
    const int n = geom.sector_order;
    const double beta = geom.sector_angle();
    out.fn = [f, n, beta](const Vec3& x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const Vec3 r = rotate2d(x, 2.0 * beta * k);
        acc += f(r) - f({r.x, -r.y, 0.0});
      }
      return acc;
    };
  } else {
    out.fn = [f](const Vec3& x) {
      double acc = 0.0;
      for (int mask = 0; mask < 8; ++mask) {
        const Vec3 r{(mask & 1) ? -x.x : x.x, (mask & 2) ? -x.y : x.y, (mask & 4) ? -x.z : x.z};
        acc += ((mask == 1 || mask == 2 || mask == 4 || mask == 7) ? -1.0 : 1.0) * f(r);
      }
      return acc;
    };
  }
  return out;
}

}  // namespace cradon
