#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cradon/geometry.hpp"
#include "cradon/vec.hpp"

namespace cradon {

struct BoundaryNode {
  Vec3 pos;
  Vec3 normal;  // outward unit normal of the face containing the node
  double weight = 0.0;
  int face = 0;  // 2D: 0 = ray at angle 0, 1 = ray at angle beta
                 // 3D: index of the vanishing coordinate
};

struct BoundaryGrid {
  Geometry geom;
  std::vector<BoundaryNode> nodes;
  double r_max = 0.0;

  // Sum of node weights with |y| <= R; approximates |dQ ^ B(0,R)|.
  double measure_within(double R) const;
};

// Graded detector grid: node radii uniform with step fine_h on
// [0, fine_extent], then with geometrically growing steps (factor `growth`)
// until R_max; trapezoid weights along the radius. In 3D each of the three
// faces carries a polar grid: the graded radii times `angular_count` cells
// uniform on [0, pi/2], weights r * dr * dpsi.
BoundaryGrid build_boundary_grid(const Geometry& geom, double r_max, double fine_h,
                                 double fine_extent, double growth, int angular_count = 256);

// Per-node pressure time series on a uniform global grid t_k = k * dt.
// Only a window of samples is stored per node (first sample at index k0);
// everything outside the window is exactly zero by causality / Huygens, or
// is never read by the reconstruction formulas.
struct NodeSeries {
  long k0 = 0;
  std::vector<double> samples;
};

struct BoundarySignal {
  std::shared_ptr<const BoundaryGrid> grid;
  double dt = 0.0;
  long n_t = 0;  // global grid length; horizon T = (n_t - 1) * dt
  std::vector<NodeSeries> series;

  double horizon() const { return dt * static_cast<double>(n_t - 1); }
  // Cubic interpolation of node i's series at time t; 0 for t <= 0 and
  // outside the stored window.
  double sample(std::size_t i, double t) const;
  // First time the stored signal of node i is nonzero (+inf if silent).
  double arrival_time(std::size_t i) const;
};

// Plain-text format: header "dim N_nodes N_t dt R_max", then per node a line
// "face y1 y2 [y3] n1 n2 [n3] w" followed by N_t samples.
void write_boundary_signal(const std::string& path, const BoundarySignal& sig);
BoundarySignal read_boundary_signal(const std::string& path);

}  // namespace cradon
