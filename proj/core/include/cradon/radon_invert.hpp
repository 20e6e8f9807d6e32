#pragma once

#include <string>

#include "cradon/geometry.hpp"
#include "cradon/sinogram.hpp"

namespace cradon {

// Uniform axis-aligned image grid; voxel (ix, iy, iz) is centered at
// origin + (i + 1/2) h per axis. 2D images have nz == 1 and origin.z == 0.
struct GridImage {
  int dim = 2;
  int nx = 0, ny = 0, nz = 1;
  double h = 0.0;
  Vec3 origin;
  std::vector<double> v;

  std::size_t index(int ix, int iy, int iz = 0) const {
    return (static_cast<std::size_t>(iz) * ny + iy) * nx + ix;
  }
  Vec3 center(int ix, int iy, int iz = 0) const {
    return {origin.x + (ix + 0.5) * h, origin.y + (iy + 0.5) * h,
            dim == 2 ? 0.0 : origin.z + (iz + 0.5) * h};
  }
};

// Filtered backprojection of a fully extended 2D sinogram: per-angle ramp
// filtering in the Fourier domain (cosine taper from 0.8 of Nyquist), then
// backprojection with linear interpolation in the offset. Unknown cells are
// rejected unless allow_partial, in which case they contribute zero.
GridImage invert_radon_2d(const Sinogram& s, const Vec3& lo, const Vec3& hi, double h,
                          int threads = 0, bool allow_partial = false);

// 3D inversion: -(1/8 pi^2) times the backprojection of the second offset
// derivative (centered differences), direction weights sin(phi) dphi dtheta.
GridImage invert_radon_3d(const Sinogram& s, const Vec3& lo, const Vec3& hi, double h,
                          int threads = 0, bool allow_partial = false);

// Zeroes voxels whose centers lie outside the open domain Q.
GridImage restrict_to_domain(const GridImage& img, const Geometry& geom);

// 2D export: 16-bit P2 PGM with the value window in a sidecar text file.
void write_image_pgm(const std::string& path, const GridImage& img);
// CSV: header "nx,ny,h,x0,y0", then ny rows of nx comma-separated values.
void write_image_csv(const std::string& path, const GridImage& img);
// 3D export: per-slice PGM stack <prefix>_z###.pgm plus <prefix>_meta.txt
// with "nx ny nz hx hy hz x0 y0 z0".
void write_image_slices(const std::string& prefix, const GridImage& img);

}  // namespace cradon
