#pragma once

#include <functional>
#include <limits>

#include "cradon/vec.hpp"

namespace cradon {

// Point-evaluable scalar field with a declared support radius about the
// origin (infinity for unbounded support). Evaluation outside the declared
// radius of a compactly supported field returns exactly 0.
struct FieldEvaluator {
  int dim = 2;
  double support_radius = std::numeric_limits<double>::infinity();
  std::function<double(const Vec3&)> fn;

  double operator()(const Vec3& x) const {
    if (std::isfinite(support_radius) && dot(x, x) > support_radius * support_radius) return 0.0;
    return fn(x);
  }
};

}  // namespace cradon
