#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cradon/vec.hpp"

namespace cradon {

enum class CellMask : std::uint8_t {
  Computed = 0,  // filled by the reconstruction formula / forward oracle
  Extended = 1,  // filled from a computed cell through a symmetry relation
  Zero = 2,      // forced exact zero (direction parallel to a mirror)
  Unknown = 3,   // not recoverable (inadmissible direction or failed entry)
};

const char* to_string(CellMask m);

// Sampled Radon data. Directions are a product grid: angles1 is the 2D
// angle gamma, or the 3D azimuth theta; angles2 is the 3D polar angle phi
// (empty in 2D). Offsets are signed hyperplane distances.
struct Sinogram {
  int dim = 2;
  std::vector<double> angles1;
  std::vector<double> angles2;
  std::vector<double> offsets;
  std::vector<double> values;
  std::vector<CellMask> mask;

  std::size_t n1() const { return angles1.size(); }
  std::size_t n2() const { return dim == 3 ? angles2.size() : 1; }
  std::size_t n_t() const { return offsets.size(); }
  std::size_t n_cells() const { return n1() * n2() * n_t(); }

  std::size_t index(std::size_t i1, std::size_t i2, std::size_t it) const {
    return (i1 * n2() + i2) * n_t() + it;
  }
  Vec3 direction(std::size_t i1, std::size_t i2) const {
    return dim == 2 ? unit2d(angles1[i1]) : unit3d(angles1[i1], angles2[i2]);
  }

  void allocate(CellMask fill = CellMask::Unknown) {
    values.assign(n_cells(), 0.0);
    mask.assign(n_cells(), fill);
  }
};

// CSV with header dim,angle1_rad[,angle2_rad],t,value,mask; one row per
// cell in canonical (angle1, angle2, t) order.
void write_sinogram_csv(const std::string& path, const Sinogram& s);
Sinogram read_sinogram_csv(const std::string& path);

// Delta-approximating time-smoothing kernel of width eps: the fixed even
// profile (315/256) (1 - u^2)^4 on (-1, 1), scaled to integrate to 1 on
// [-eps, eps]. Width 0 disables smoothing.
struct Mollifier {
  double eps = 0.0;

  double profile(double u) const;  // unscaled eta(u)
  double operator()(double t) const;
};

}  // namespace cradon
