#include "cradon/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cradon {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n, Chebyshev-like initial guesses.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

double cubic_interp_uniform(std::span<const double> samples, double t0, double dt, double t) {
  const auto n = static_cast<long>(samples.size());
  if (n == 0) return 0.0;
  const double u = (t - t0) / dt;
  long k = static_cast<long>(std::floor(u));
  double s = u - static_cast<double>(k);
  if (n < 4) {
    // Degenerate series: fall back to linear between the nearest samples.
    auto at = [&](long i) { return (i < 0 || i >= n) ? 0.0 : samples[static_cast<std::size_t>(i)]; };
    return (1.0 - s) * at(k) + s * at(k + 1);
  }
  if (k + 2 > n - 1 && u > static_cast<double>(n - 1) + 2.0) return 0.0;
  if (k - 1 < 0 && u < -2.0) return 0.0;
  auto at = [&](long i) { return (i < 0 || i >= n) ? 0.0 : samples[static_cast<std::size_t>(i)]; };
  const double ym1 = at(k - 1), y0 = at(k), y1 = at(k + 1), y2 = at(k + 2);
  // Lagrange weights for nodes -1, 0, 1, 2 evaluated at s.
  const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
  const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
  const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
  return w0 * ym1 + w1 * y0 + w2 * y1 + w3 * y2;
}

}  // namespace cradon
