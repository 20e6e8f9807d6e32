#pragma once

#include <cstdint>

#include "cradon/boundary.hpp"
#include "cradon/phantom.hpp"

namespace cradon {

// Average of the phantom over the circle |x - y| = r (2D). Evaluated per
// bump over the arc actually crossing the bump ball, with Gauss-Legendre
// quadrature on the arc; exact 0 when the circle misses the support.
double circular_mean(const Phantom& ph, const Vec3& y, double r, int arc_gl_order = 32);

// Average of the phantom over the sphere |x - y| = r (3D). Radial bumps
// reduce the surface average to a 1D radial integral with a closed-form
// antiderivative, so the value is exact.
double spherical_mean(const Phantom& ph, const Vec3& y, double r);

struct SynthesisParams {
  double dt = 0.01;
  // Extra stored time beyond |y| + r0 per node; reconstruction only ever
  // samples up to |y| + r0, the pad exists for probing past -r0.
  double t_pad = 0.0;
  int abel_gl_order = 48;      // 2D Abel integral after r = t sin(u)
  int arc_gl_order = 32;       // circular means
  int mean_table_density = 24; // circular-mean table entries per bump radius
  int threads = 0;             // 0 = all cores; results identical regardless
};

// Boundary pressure series for the wave-equation initial value problem with
// initial pressure `ph` and zero initial velocity. 2D: time derivative of
// the weighted Abel integral of circular means (centered differences in t);
// 3D: exact per-bump evaluation of d/dt [ t * spherical_mean(y, t) ].
// Refuses dt above half the smallest bump radius (undersampled wavefront).
BoundarySignal synthesize_boundary_data(const Phantom& ph, const BoundaryGrid& grid,
                                        const SynthesisParams& params);
BoundarySignal synthesize_boundary_data(const Phantom& ph, const BoundaryGrid& grid, double dt);

// Adds zero-mean uniform noise on the window [arrival, arrival + 2] of each
// node, scaled so the per-node windowed l2 norm of the noise equals
// level * (windowed l2 norm of the clean signal). Deterministic in `seed`
// and the node index; level 0 returns the input bitwise-identical.
BoundarySignal add_noise(const BoundarySignal& sig, double level, std::uint64_t seed);

}  // namespace cradon
