#include "cradon/boundary.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "cradon/quadrature.hpp"

namespace cradon {

double BoundaryGrid::measure_within(double R) const {
  double acc = 0.0;
  for (const BoundaryNode& n : nodes)
    if (norm(n.pos) <= R) acc += n.weight;
  return acc;
}

namespace {

// Graded radii 0, h, 2h, ..., fine_extent, then steps h*g, h*g^2, ...
std::vector<double> graded_radii(double r_max, double fine_h, double fine_extent, double growth) {
  std::vector<double> r;
  const int n_fine = static_cast<int>(std::llround(fine_extent / fine_h));
  for (int i = 0; i <= n_fine; ++i) r.push_back(i * fine_h);
  double step = fine_h;
  while (true) {
    step *= growth;
    const double next = r.back() + step;
    if (next > r_max) break;
    r.push_back(next);
  }
  return r;
}

std::vector<double> trapezoid_weights(const std::vector<double>& r) {
  const std::size_t n = r.size();
  std::vector<double> w(n, 0.0);
  if (n < 2) return w;
  w[0] = 0.5 * (r[1] - r[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (r[i + 1] - r[i - 1]);
  w[n - 1] = 0.5 * (r[n - 1] - r[n - 2]);
  return w;
}

}  // namespace

BoundaryGrid build_boundary_grid(const Geometry& geom, double r_max, double fine_h,
                                 double fine_extent, double growth, int angular_count) {
  if (!(0.0 < fine_h && fine_h < fine_extent && fine_extent < r_max))
    throw std::invalid_argument("build_boundary_grid: need 0 < fine_h < fine_extent < R_max");
  if (growth <= 1.0) throw std::invalid_argument("build_boundary_grid: growth must exceed 1");

  BoundaryGrid grid;
  grid.geom = geom;
  grid.r_max = r_max;
  const std::vector<double> radii = graded_radii(r_max, fine_h, fine_extent, growth);
  const std::vector<double> rw = trapezoid_weights(radii);

  if (geom.dim == 2) {
    const double beta = geom.sector_angle();
    const Vec3 dir[2] = {{1.0, 0.0, 0.0}, unit2d(beta)};
    const Vec3 nrm[2] = {{0.0, -1.0, 0.0}, {-std::sin(beta), std::cos(beta), 0.0}};
    for (int face = 0; face < 2; ++face)
      for (std::size_t i = 0; i < radii.size(); ++i)
        grid.nodes.push_back({radii[i] * dir[face], nrm[face], rw[i], face});
  } else {
    if (angular_count < 1) throw std::invalid_argument("build_boundary_grid: angular_count < 1");
    const double dpsi = 0.5 * M_PI / angular_count;
    for (int face = 0; face < 3; ++face) {
      const int a = (face == 0) ? 1 : 0;
      const int b = (face == 2) ? 1 : 2;
      Vec3 n{0, 0, 0};
      (face == 0 ? n.x : face == 1 ? n.y : n.z) = -1.0;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] * rw[i] == 0.0) continue;  // zero-area ring at r = 0
        for (int m = 0; m < angular_count; ++m) {
          const double psi = (m + 0.5) * dpsi;
          double comp[3] = {0.0, 0.0, 0.0};
          comp[a] = radii[i] * std::cos(psi);
          comp[b] = radii[i] * std::sin(psi);
          grid.nodes.push_back(
              {{comp[0], comp[1], comp[2]}, n, radii[i] * rw[i] * dpsi, face});
        }
      }
    }
  }
  return grid;
}

double BoundarySignal::sample(std::size_t i, double t) const {
  if (t <= 0.0) return 0.0;
  const NodeSeries& s = series[i];
  return cubic_interp_uniform(s.samples, dt * static_cast<double>(s.k0), dt, t);
}

double BoundarySignal::arrival_time(std::size_t i) const {
  const NodeSeries& s = series[i];
  for (std::size_t k = 0; k < s.samples.size(); ++k)
    if (s.samples[k] != 0.0) return dt * static_cast<double>(s.k0 + static_cast<long>(k));
  return std::numeric_limits<double>::infinity();
}

void write_boundary_signal(const std::string& path, const BoundarySignal& sig) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write boundary signal: " + path);
  const BoundaryGrid& g = *sig.grid;
  std::fprintf(out, "%d %zu %ld %.17g %.17g\n", g.geom.dim, g.nodes.size(), sig.n_t, sig.dt,
               g.r_max);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const BoundaryNode& n = g.nodes[i];
    if (g.geom.dim == 2)
      std::fprintf(out, "%d %.17g %.17g %.17g %.17g %.17g\n", n.face, n.pos.x, n.pos.y, n.normal.x,
                   n.normal.y, n.weight);
    else
      std::fprintf(out, "%d %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", n.face, n.pos.x, n.pos.y,
                   n.pos.z, n.normal.x, n.normal.y, n.normal.z, n.weight);
    const NodeSeries& s = sig.series[i];
    for (long k = 0; k < sig.n_t; ++k) {
      const long j = k - s.k0;
      const double v =
          (j >= 0 && j < static_cast<long>(s.samples.size())) ? s.samples[static_cast<std::size_t>(j)] : 0.0;
      std::fprintf(out, "%.17g%c", v, k + 1 == sig.n_t ? '\n' : ' ');
    }
  }
  std::fclose(out);
}

BoundarySignal read_boundary_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open boundary signal: " + path);
  int dim = 0;
  std::size_t n_nodes = 0;
  BoundarySignal sig;
  auto grid = std::make_shared<BoundaryGrid>();
  if (!(in >> dim >> n_nodes >> sig.n_t >> sig.dt >> grid->r_max))
    throw std::runtime_error("boundary signal: bad header in " + path);
  grid->geom = (dim == 2) ? Geometry::sector2d(2) : Geometry::octant3d();
  grid->nodes.resize(n_nodes);
  sig.series.resize(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    BoundaryNode& n = grid->nodes[i];
    bool ok = static_cast<bool>(in >> n.face >> n.pos.x >> n.pos.y);
    if (ok && dim == 3) ok = static_cast<bool>(in >> n.pos.z);
    if (ok) ok = static_cast<bool>(in >> n.normal.x >> n.normal.y);
    if (ok && dim == 3) ok = static_cast<bool>(in >> n.normal.z);
    if (ok) ok = static_cast<bool>(in >> n.weight);
    if (!ok) throw std::runtime_error("boundary signal: bad node record in " + path);
    NodeSeries& s = sig.series[i];
    s.k0 = 0;
    s.samples.resize(static_cast<std::size_t>(sig.n_t));
    for (long k = 0; k < sig.n_t; ++k)
      if (!(in >> s.samples[static_cast<std::size_t>(k)]))
        throw std::runtime_error("boundary signal: truncated samples in " + path);
  }
  if (dim == 2) {
    // The sector order is not part of the header; recover it from the
    // outward normal of the tilted ray.
    for (const BoundaryNode& n : grid->nodes) {
      if (n.face != 1) continue;
      const double beta = std::atan2(-n.normal.x, n.normal.y);
      grid->geom = Geometry::sector2d(static_cast<int>(std::llround(M_PI / beta)));
      break;
    }
  }
  sig.grid = grid;
  return sig;
}

}  // namespace cradon
