#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cradon {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
};

// Shared, lazily built rules (orders used all over the code base).
const GaussLegendre& gauss_legendre(int n);

// Integrate fn over [a, b] with an n-point Gauss-Legendre rule.
template <typename F>
double integrate_gl(F&& fn, double a, double b, int n) {
  const GaussLegendre& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * acc;
}

// Four-point (cubic) Lagrange interpolation on a uniform grid.
// samples[i] corresponds to abscissa t0 + i*dt; out-of-range reads are 0.
double cubic_interp_uniform(std::span<const double> samples, double t0, double dt, double t);

}  // namespace cradon
