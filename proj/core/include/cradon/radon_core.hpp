#pragma once

#include <limits>

#include "cradon/boundary.hpp"
#include "cradon/field.hpp"
#include "cradon/geometry.hpp"
#include "cradon/phantom.hpp"
#include "cradon/sinogram.hpp"

namespace cradon {

// Brute-force Radon transform of a compactly supported field: midpoint
// quadrature over the line (2D) or plane (3D) {x . omega = t} restricted to
// the support ball. `n` is the node count per in-plane axis.
double forward_radon(const FieldEvaluator& f, const Vec3& omega, double t, int n = 0);

// Plane integral of the unit radial profile h(|x|) over {x . omega = tau},
// closed form: (256/315) (1-tau^2)^(9/2) in 2D, (pi/5) (1-tau^2)^5 in 3D.
double profile_plane_integral(int dim, double tau);

// Exact Radon transform of a phantom (sum of scaled radial bumps).
double phantom_projection(const Phantom& ph, const Vec3& omega, double t);

// Exact Radon transform of the odd extension of a phantom; the oracle the
// reconstruction is compared against.
double odd_phantom_projection(const Phantom& ph, const Geometry& geom, const Vec3& omega,
                              double t);

// Oracle sinogram on the given fundamental grids (all cells Computed).
Sinogram oracle_fundamental_sinogram(const Phantom& ph, const Geometry& geom,
                                     const std::vector<double>& angles1,
                                     const std::vector<double>& angles2,
                                     const std::vector<double>& offsets, int threads = 0);

constexpr double kNoCut = std::numeric_limits<double>::infinity();

// Radon projection of the odd-extended source at (t, omega), offset t <= 0,
// omega strictly inside Q, recovered from boundary data: the weighted sum
// over nodes and the signed direction family of time-shifted samples.
// Nodes beyond |y| > r_cut are ignored.
double reconstruct_projection(const BoundarySignal& data, const Vec3& omega, double t,
                              const Mollifier& moll = {}, double r_cut = kNoCut);

// Sweeps reconstruct_projection over a fundamental direction/offset grid.
// With finite r_cut, directions outside admissible_set(r_cut, r0) are marked
// Unknown (r0 is taken as -offsets.front()). Per-entry failures are recorded
// in the mask; the sweep itself never throws for individual entries.
Sinogram reconstruct_fundamental_sinogram(const BoundarySignal& data,
                                          const std::vector<double>& angles1,
                                          const std::vector<double>& angles2,
                                          const std::vector<double>& offsets,
                                          const Mollifier& moll = {}, double r_cut = kNoCut,
                                          int threads = 0);

// Fills the full circle/sphere of directions and offsets mirrored to t > 0
// from a fundamental-sector sinogram, using the rotation/reflection
// redundancies of odd sources and (R h)(-t,-omega) = (R h)(t,omega).
// Directions within tolerance of a mirror line/plane are forced to zero.
// Idempotent: extending an already extended sinogram reproduces it.
Sinogram symmetry_extend(const Sinogram& s, const Geometry& geom);

}  // namespace cradon
