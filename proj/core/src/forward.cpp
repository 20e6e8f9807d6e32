#include "cradon/forward.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cradon/parallel.hpp"
#include "cradon/quadrature.hpp"

namespace cradon {

namespace {

double min_bump_radius(const Phantom& ph) {
  double r = std::numeric_limits<double>::infinity();
  for (const RadialBump& b : ph.bumps) r = std::min(r, b.radius);
  return r;
}

}  // namespace

namespace {

// Average over the circle of radius r centered d away from a single bump,
// integrated only over the arc actually crossing the bump ball.
double bump_circular_mean(double d, double r, double rho, double amp, int arc_gl_order) {
  if (d < 1e-12) return r < rho ? amp * bump_profile(r / rho) : 0.0;
  // cos of the arc half-width about the direction towards the center.
  const double c = (d * d + r * r - rho * rho) / (2.0 * d * r);
  if (c >= 1.0) return 0.0;  // circle misses the bump ball
  const double psi0 = (c <= -1.0) ? M_PI : std::acos(c);
  return (1.0 / M_PI) * integrate_gl(
                            [&](double psi) {
                              const double s2 = d * d + r * r - 2.0 * d * r * std::cos(psi);
                              return amp * bump_profile(std::sqrt(s2) / rho);
                            },
                            0.0, psi0, arc_gl_order);
}

}  // namespace

double circular_mean(const Phantom& ph, const Vec3& y, double r, int arc_gl_order) {
  if (r <= 0.0) throw std::invalid_argument("circular_mean: radius must be positive");
  if (ph.dim != 2) throw std::invalid_argument("circular_mean: 2D phantom required");
  double acc = 0.0;
  for (const RadialBump& b : ph.bumps)
    acc += bump_circular_mean(dist(y, b.center), r, b.radius, b.amplitude, arc_gl_order);
  return acc;
}

namespace {

// Antiderivative of s * h(s / rho) with h(u) = (1 - u^2)^4:
// rho^2 * (1 - (1 - u^2)^5) / 10 with u clamped to [0, 1].
double radial_moment(double s, double rho) {
  const double u = std::min(s / rho, 1.0);
  const double q = 1.0 - u * u;
  const double q2 = q * q;
  return rho * rho * (1.0 - q2 * q2 * q) / 10.0;
}

}  // namespace

double spherical_mean(const Phantom& ph, const Vec3& y, double r) {
  if (r <= 0.0) throw std::invalid_argument("spherical_mean: radius must be positive");
  if (ph.dim != 3) throw std::invalid_argument("spherical_mean: 3D phantom required");
  double acc = 0.0;
  for (const RadialBump& b : ph.bumps) {
    const double d = dist(y, b.center);
    if (d < 1e-12) {
      if (r < b.radius) acc += b.amplitude * bump_profile(r / b.radius);
      continue;
    }
    const double lo = std::abs(d - r), hi = d + r;
    if (lo >= b.radius) continue;
    acc += b.amplitude * (radial_moment(hi, b.radius) - radial_moment(lo, b.radius)) /
           (2.0 * d * r);
  }
  return acc;
}

namespace {

struct SupportWindow {
  double near = 0.0;  // distance from the node to the nearest support point
  double far = 0.0;
};

SupportWindow support_window(const Phantom& ph, const Vec3& y) {
  SupportWindow w{std::numeric_limits<double>::infinity(), 0.0};
  for (const RadialBump& b : ph.bumps) {
    const double d = dist(y, b.center);
    w.near = std::min(w.near, d - b.radius);
    w.far = std::max(w.far, d + b.radius);
  }
  w.near = std::max(w.near, 0.0);
  return w;
}

// Circular means of one bump seen from one node, tabulated on a uniform
// radius grid spanning its crossing window [d - rho, d + rho] and
// cubic-interpolated by the Abel quadrature. Keeping the synthesis per bump
// makes the boundary data exactly linear in the phantom.
struct BumpMeanTable {
  double lo = 0.0, hi = 0.0;  // crossing window
  double r0 = 0.0, dr = 1.0;
  std::vector<double> m;

  double operator()(double r) const { return cubic_interp_uniform(m, r0, dr, r); }
};

BumpMeanTable build_bump_table(const RadialBump& b, double d, const SynthesisParams& p) {
  BumpMeanTable tab;
  tab.lo = std::max(0.0, d - b.radius);
  tab.hi = d + b.radius;
  tab.dr = b.radius / p.mean_table_density;
  tab.r0 = std::max(0.0, tab.lo - 2.0 * tab.dr);
  const auto n =
      static_cast<std::size_t>(std::ceil((tab.hi + 2.0 * tab.dr - tab.r0) / tab.dr)) + 1;
  tab.m.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = tab.r0 + tab.dr * static_cast<double>(i);
    tab.m[i] = (r <= 0.0) ? 0.0 : bump_circular_mean(d, r, b.radius, b.amplitude, p.arc_gl_order);
  }
  return tab;
}

// Weighted Abel integral of one bump's circular means,
//   A(t) = integral_0^t M(y,r) r / sqrt(t^2 - r^2) dr,
// with the endpoint singularity removed by r = t sin(u).
double abel_integral(const BumpMeanTable& tab, double t, int gl_order) {
  if (t <= tab.lo) return 0.0;
  const double u_lo = std::asin(std::clamp(tab.lo / t, 0.0, 1.0));
  const double u_hi = std::asin(std::clamp(tab.hi / t, 0.0, 1.0));
  return t * integrate_gl([&](double u) { return tab(t * std::sin(u)) * std::sin(u); }, u_lo,
                          u_hi, gl_order);
}

}  // namespace

BoundarySignal synthesize_boundary_data(const Phantom& ph, const BoundaryGrid& grid,
                                        const SynthesisParams& params) {
  if (params.dt <= 0.0) throw std::invalid_argument("synthesize: dt must be positive");
  if (ph.dim != grid.geom.dim) throw std::invalid_argument("synthesize: dimension mismatch");
  if (params.dt > 0.5 * min_bump_radius(ph))
    throw std::invalid_argument("synthesize: dt undersamples the wavefront (dt > r_min / 2)");

  const double dt = params.dt;
  const double r0 = phantom_support_radius(ph);
  const double horizon = grid.r_max + r0 + params.t_pad + 2.0 * dt;

  BoundarySignal sig;
  sig.grid = std::make_shared<BoundaryGrid>(grid);
  sig.dt = dt;
  sig.n_t = static_cast<long>(std::ceil(horizon / dt)) + 1;
  sig.series.resize(grid.nodes.size());

  parallel_for(grid.nodes.size(), params.threads, [&](std::size_t i) {
    const Vec3& y = grid.nodes[i].pos;
    const SupportWindow w = support_window(ph, y);
    NodeSeries& s = sig.series[i];

    // Needed sample range: reconstruction reads up to |y| + r0 (+pad).
    const double t_top =
        (grid.geom.dim == 2) ? norm(y) + r0 + params.t_pad : std::min(w.far, norm(y) + r0 + params.t_pad);
    s.k0 = std::max<long>(0, static_cast<long>(std::floor(w.near / dt)) - 4);
    const long k1 = std::min<long>(sig.n_t - 1, static_cast<long>(std::ceil(t_top / dt)) + 4);
    if (k1 < s.k0) return;
    s.samples.assign(static_cast<std::size_t>(k1 - s.k0 + 1), 0.0);

    if (grid.geom.dim == 3) {
      for (long k = std::max<long>(s.k0, 1); k <= k1; ++k) {
        const double t = dt * static_cast<double>(k);
        double p = 0.0;
        for (const RadialBump& b : ph.bumps) {
          const double d = dist(y, b.center);
          const double s_out = d + t, s_in = std::abs(d - t);
          double g = 0.0;
          if (s_out < b.radius) g += s_out * bump_profile(s_out / b.radius);
          if (s_in < b.radius) g += (d - t) * bump_profile(s_in / b.radius);
          p += b.amplitude * g / (2.0 * d);
        }
        s.samples[static_cast<std::size_t>(k - s.k0)] = p;
      }
      return;
    }

    // A on [k0-1, k1+1] accumulated bump by bump, then centered differences
    // in t. A(t<=0) = 0; the one-sided stencil only triggers at the global
    // horizon.
    std::vector<double> a(static_cast<std::size_t>(k1 - s.k0 + 3), 0.0);
    for (const RadialBump& b : ph.bumps) {
      const BumpMeanTable tab = build_bump_table(b, dist(y, b.center), params);
      for (long k = std::max<long>(s.k0 - 1, 1); k <= k1 + 1; ++k)
        a[static_cast<std::size_t>(k - s.k0 + 1)] +=
            abel_integral(tab, dt * static_cast<double>(k), params.abel_gl_order);
    }
    for (long k = std::max<long>(s.k0, 1); k <= k1; ++k) {
      const std::size_t j = static_cast<std::size_t>(k - s.k0);
      double p;
      if (k == sig.n_t - 1)
        p = (j >= 1) ? (3.0 * a[j + 1] - 4.0 * a[j] + a[j - 1]) / (2.0 * dt) : 0.0;
      else
        p = (a[j + 2] - a[j]) / (2.0 * dt);
      s.samples[j] = p;
    }
  });
  return sig;
}

BoundarySignal synthesize_boundary_data(const Phantom& ph, const BoundaryGrid& grid, double dt) {
  SynthesisParams p;
  p.dt = dt;
  return synthesize_boundary_data(ph, grid, p);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

BoundarySignal add_noise(const BoundarySignal& sig, double level, std::uint64_t seed) {
  if (level < 0.0) throw std::invalid_argument("add_noise: level must be >= 0");
  if (level == 0.0) return sig;
  BoundarySignal out = sig;
  const long window_len = static_cast<long>(std::llround(2.0 / sig.dt));
  for (std::size_t i = 0; i < out.series.size(); ++i) {
    NodeSeries& s = out.series[i];
    long first = -1;
    for (std::size_t k = 0; k < s.samples.size(); ++k)
      if (s.samples[k] != 0.0) {
        first = static_cast<long>(k);
        break;
      }
    if (first < 0) continue;
    const long last = std::min<long>(static_cast<long>(s.samples.size()) - 1, first + window_len);
    double clean2 = 0.0;
    for (long k = first; k <= last; ++k) clean2 += s.samples[static_cast<std::size_t>(k)] * s.samples[static_cast<std::size_t>(k)];
    if (clean2 == 0.0) continue;

    std::mt19937_64 rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (i + 1))));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> raw(static_cast<std::size_t>(last - first + 1));
    double raw2 = 0.0;
    for (double& v : raw) {
      v = uni(rng);
      raw2 += v * v;
    }
    if (raw2 == 0.0) continue;
    const double scale = level * std::sqrt(clean2 / raw2);
    for (long k = first; k <= last; ++k)
      s.samples[static_cast<std::size_t>(k)] += scale * raw[static_cast<std::size_t>(k - first)];
  }
  return out;
}

}  // namespace cradon
