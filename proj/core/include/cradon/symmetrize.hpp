#pragma once

#include "cradon/field.hpp"
#include "cradon/geometry.hpp"

namespace cradon {

// Odd extension: the signed sum of f over the domain's reflection/rotation
// group. The result is odd across every mirror line/plane of the cross (and
// so vanishes there), and restricted to Q it coincides with f whenever f is
// supported inside Q. Evaluation is lazy; no resampling is involved.
FieldEvaluator odd_extend(const FieldEvaluator& f, const Geometry& geom);

}  // namespace cradon
