#include "cradon/radon_invert.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>

#include "cradon/parallel.hpp"

namespace cradon {

namespace {

void require_uniform(const std::vector<double>& g, const char* what) {
  if (g.size() < 2) throw std::invalid_argument(std::string("invert_radon: need at least two ") + what);
  const double d0 = g[1] - g[0];
  for (std::size_t i = 1; i < g.size(); ++i)
    if (std::abs((g[i] - g[i - 1]) - d0) > 1e-9 * std::abs(d0))
      throw std::invalid_argument(std::string("invert_radon: nonuniform ") + what);
}

void check_mask(const Sinogram& s, bool allow_partial) {
  if (allow_partial) return;
  for (CellMask m : s.mask)
    if (m == CellMask::Unknown)
      throw std::invalid_argument(
          "invert_radon: sinogram has unknown cells (pass allow_partial to zero them)");
}

// Cyclic midpoint weights for the direction grid on the circle.
std::vector<double> cyclic_weights(const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? angles[i + 1] : angles[0] + 2.0 * M_PI;
    const double prev = (i > 0) ? angles[i - 1] : angles[n - 1] - 2.0 * M_PI;
    w[i] = 0.5 * (next - prev);
  }
  return w;
}

GridImage make_image(int dim, const Vec3& lo, const Vec3& hi, double h) {
  if (h <= 0.0) throw std::invalid_argument("invert_radon: grid spacing must be positive");
  GridImage img;
  img.dim = dim;
  img.h = h;
  img.origin = lo;
  img.nx = std::max(1, static_cast<int>(std::llround((hi.x - lo.x) / h)));
  img.ny = std::max(1, static_cast<int>(std::llround((hi.y - lo.y) / h)));
  img.nz = dim == 3 ? std::max(1, static_cast<int>(std::llround((hi.z - lo.z) / h))) : 1;
  img.v.assign(static_cast<std::size_t>(img.nx) * img.ny * img.nz, 0.0);
  return img;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Ramp-filters every direction profile of a 2D sinogram on a padded grid.
// Returns the filtered profiles (row per direction, padded length), with
// the sample at pad offset `pad` corresponding to offsets.front().
struct FilteredProfiles {
  std::vector<double> rows;
  std::size_t len = 0;
  std::size_t pad = 0;
};

FilteredProfiles ramp_filter_profiles(const Sinogram& s) {
  const std::size_t nt = s.n_t();
  const double dt = s.offsets[1] - s.offsets[0];
  FilteredProfiles fp;
  fp.len = next_pow2(4 * nt);
  fp.pad = (fp.len - nt) / 2;
  fp.rows.assign(s.n1() * fp.len, 0.0);

  const std::size_t nf = fp.len / 2 + 1;
  std::vector<double> filter(nf);
  const double sigma_nyq = M_PI / dt;
  for (std::size_t k = 0; k < nf; ++k) {
    const double sigma = 2.0 * M_PI * static_cast<double>(k) / (static_cast<double>(fp.len) * dt);
    double taper = 1.0;
    if (sigma > 0.8 * sigma_nyq)
      taper = std::cos(0.5 * M_PI * (sigma - 0.8 * sigma_nyq) / (0.2 * sigma_nyq));
    filter[k] = sigma * std::max(0.0, taper);
  }

  std::vector<double> buf(fp.len, 0.0);
  std::vector<std::complex<double>> spec(nf);
  auto* spec_c = reinterpret_cast<fftw_complex*>(spec.data());
  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(fp.len), buf.data(), spec_c,
                                       FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(static_cast<int>(fp.len), spec_c, buf.data(),
                                       FFTW_ESTIMATE);

  for (std::size_t i1 = 0; i1 < s.n1(); ++i1) {
    std::fill(buf.begin(), buf.end(), 0.0);
    for (std::size_t it = 0; it < nt; ++it) {
      const std::size_t c = s.index(i1, 0, it);
      buf[fp.pad + it] = (s.mask[c] == CellMask::Unknown) ? 0.0 : s.values[c];
    }
    fftw_execute(fwd);
    for (std::size_t k = 0; k < nf; ++k) spec[k] *= filter[k];
    fftw_execute(bwd);
    // dt and d sigma cancel against the 1 / 2 pi of the inverse transform,
    // leaving only the FFTW normalization.
    double* row = fp.rows.data() + i1 * fp.len;
    const double scale = 1.0 / static_cast<double>(fp.len);
    for (std::size_t m = 0; m < fp.len; ++m) row[m] = buf[m] * scale;
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  return fp;
}

}  // namespace

GridImage invert_radon_2d(const Sinogram& s, const Vec3& lo, const Vec3& hi, double h,
                          int threads, bool allow_partial) {
  if (s.dim != 2) throw std::invalid_argument("invert_radon_2d: 2D sinogram required");
  require_uniform(s.offsets, "offsets");
  check_mask(s, allow_partial);

  const double dt = s.offsets[1] - s.offsets[0];
  const FilteredProfiles fp = ramp_filter_profiles(s);
  const std::vector<double> wgt = cyclic_weights(s.angles1);
  std::vector<double> cosg(s.n1()), sing(s.n1());
  for (std::size_t i = 0; i < s.n1(); ++i) {
    cosg[i] = std::cos(s.angles1[i]);
    sing[i] = std::sin(s.angles1[i]);
  }
  const double t0 = s.offsets.front() - static_cast<double>(fp.pad) * dt;

  GridImage img = make_image(2, lo, hi, h);
  parallel_for(static_cast<std::size_t>(img.ny), threads, [&](std::size_t iy) {
    for (int ix = 0; ix < img.nx; ++ix) {
      const Vec3 x = img.center(ix, static_cast<int>(iy));
      double acc = 0.0;
      for (std::size_t i1 = 0; i1 < s.n1(); ++i1) {
        const double t = x.x * cosg[i1] + x.y * sing[i1];
        const double u = (t - t0) / dt;
        const long k = static_cast<long>(std::floor(u));
        if (k < 0 || k + 1 >= static_cast<long>(fp.len)) continue;
        const double fr = u - static_cast<double>(k);
        const double* row = fp.rows.data() + i1 * fp.len;
        acc += wgt[i1] * ((1.0 - fr) * row[k] + fr * row[k + 1]);
      }
      // f = (1 / 4 pi) Integral over the full circle of the ramp-filtered
      // profiles; the 1 / 2 pi of the inverse Fourier transform is already
      // inside the rows.
      img.v[img.index(ix, static_cast<int>(iy))] = acc / (4.0 * M_PI);
    }
  });
  return img;
}

GridImage invert_radon_3d(const Sinogram& s, const Vec3& lo, const Vec3& hi, double h,
                          int threads, bool allow_partial) {
  if (s.dim != 3) throw std::invalid_argument("invert_radon_3d: 3D sinogram required");
  require_uniform(s.offsets, "offsets");
  require_uniform(s.angles1, "azimuth grid");
  require_uniform(s.angles2, "polar grid");
  check_mask(s, allow_partial);

  const double dt = s.offsets[1] - s.offsets[0];
  const double dth = s.angles1[1] - s.angles1[0];
  const double dph = s.angles2[1] - s.angles2[0];
  const std::size_t nt = s.n_t();

  // Second offset derivative of every profile, zero at the ends.
  std::vector<double> d2(s.n_cells(), 0.0);
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2)
      for (std::size_t it = 1; it + 1 < nt; ++it) {
        const std::size_t c = s.index(i1, i2, it);
        auto val = [&](std::size_t j) {
          const std::size_t cc = s.index(i1, i2, j);
          return s.mask[cc] == CellMask::Unknown ? 0.0 : s.values[cc];
        };
        d2[c] = (val(it + 1) - 2.0 * val(it) + val(it - 1)) / (dt * dt);
      }

  const std::size_t ndir = s.n1() * s.n2();
  std::vector<Vec3> dirs(ndir);
  std::vector<double> wgt(ndir);
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2) {
      dirs[i1 * s.n2() + i2] = s.direction(i1, i2);
      wgt[i1 * s.n2() + i2] = std::sin(s.angles2[i2]) * dth * dph;
    }

  GridImage img = make_image(3, lo, hi, h);
  const double t_first = s.offsets.front();
  parallel_for(static_cast<std::size_t>(img.nz), threads, [&](std::size_t iz) {
    for (int iy = 0; iy < img.ny; ++iy)
      for (int ix = 0; ix < img.nx; ++ix) {
        const Vec3 x = img.center(ix, iy, static_cast<int>(iz));
        double acc = 0.0;
        for (std::size_t d = 0; d < ndir; ++d) {
          const double t = dot(x, dirs[d]);
          const double u = (t - t_first) / dt;
          const long k = static_cast<long>(std::floor(u));
          if (k < 0 || k + 1 >= static_cast<long>(nt)) continue;
          const double fr = u - static_cast<double>(k);
          const double* prof = d2.data() + d * nt;
          acc += wgt[d] * ((1.0 - fr) * prof[k] + fr * prof[k + 1]);
        }
        img.v[img.index(ix, iy, static_cast<int>(iz))] = -acc / (8.0 * M_PI * M_PI);
      }
  });
  return img;
}

GridImage restrict_to_domain(const GridImage& img, const Geometry& geom) {
  GridImage out = img;
  for (int iz = 0; iz < img.nz; ++iz)
    for (int iy = 0; iy < img.ny; ++iy)
      for (int ix = 0; ix < img.nx; ++ix) {
        const Vec3 c = img.center(ix, iy, iz);
        bool inside;
        if (geom.dim == 2) {
          const double beta = geom.sector_angle();
          inside = c.y > 0.0 && c.x * std::sin(beta) - c.y * std::cos(beta) > 0.0;
        } else {
          inside = c.x > 0.0 && c.y > 0.0 && c.z > 0.0;
        }
        if (!inside) out.v[out.index(ix, iy, iz)] = 0.0;
      }
  return out;
}

namespace {

void write_pgm_slice(std::FILE* out, const GridImage& img, int iz, double vmin, double vmax) {
  std::fprintf(out, "P2\n%d %d\n65535\n", img.nx, img.ny);
  const double scale = (vmax > vmin) ? 65535.0 / (vmax - vmin) : 0.0;
  for (int iy = img.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < img.nx; ++ix) {
      const int g = static_cast<int>(std::lround((img.v[img.index(ix, iy, iz)] - vmin) * scale));
      std::fprintf(out, "%d%c", std::clamp(g, 0, 65535), ix + 1 == img.nx ? '\n' : ' ');
    }
  }
}

std::pair<double, double> value_window(const GridImage& img) {
  double vmin = 0.0, vmax = 0.0;
  if (!img.v.empty()) {
    vmin = *std::min_element(img.v.begin(), img.v.end());
    vmax = *std::max_element(img.v.begin(), img.v.end());
  }
  return {vmin, vmax};
}

}  // namespace

void write_image_pgm(const std::string& path, const GridImage& img) {
  if (img.dim != 2) throw std::invalid_argument("write_image_pgm: 2D image required");
  const auto [vmin, vmax] = value_window(img);
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write image: " + path);
  write_pgm_slice(out, img, 0, vmin, vmax);
  std::fclose(out);
  std::FILE* meta = std::fopen((path + ".meta").c_str(), "w");
  if (!meta) throw std::runtime_error("cannot write image sidecar: " + path + ".meta");
  std::fprintf(meta, "nx %d\nny %d\nh %.17g\nx0 %.17g\ny0 %.17g\nvmin %.17g\nvmax %.17g\n", img.nx,
               img.ny, img.h, img.origin.x, img.origin.y, vmin, vmax);
  std::fclose(meta);
}

void write_image_csv(const std::string& path, const GridImage& img) {
  if (img.dim != 2) throw std::invalid_argument("write_image_csv: 2D image required");
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write image: " + path);
  std::fprintf(out, "nx,ny,h,x0,y0\n%d,%d,%.17g,%.17g,%.17g\n", img.nx, img.ny, img.h,
               img.origin.x, img.origin.y);
  for (int iy = 0; iy < img.ny; ++iy)
    for (int ix = 0; ix < img.nx; ++ix)
      std::fprintf(out, "%.17g%c", img.v[img.index(ix, iy)], ix + 1 == img.nx ? '\n' : ',');
  std::fclose(out);
}

void write_image_slices(const std::string& prefix, const GridImage& img) {
  if (img.dim != 3) throw std::invalid_argument("write_image_slices: 3D image required");
  const auto [vmin, vmax] = value_window(img);
  char name[4096];
  for (int iz = 0; iz < img.nz; ++iz) {
    std::snprintf(name, sizeof name, "%s_z%03d.pgm", prefix.c_str(), iz);
    std::FILE* out = std::fopen(name, "w");
    if (!out) throw std::runtime_error(std::string("cannot write image: ") + name);
    write_pgm_slice(out, img, iz, vmin, vmax);
    std::fclose(out);
  }
  std::snprintf(name, sizeof name, "%s_meta.txt", prefix.c_str());
  std::FILE* meta = std::fopen(name, "w");
  if (!meta) throw std::runtime_error(std::string("cannot write image metadata: ") + name);
  std::fprintf(meta, "%d %d %d %.17g %.17g %.17g %.17g %.17g %.17g\n", img.nx, img.ny, img.nz,
               img.h, img.h, img.h, img.origin.x, img.origin.y, img.origin.z);
  std::fclose(meta);
}

}  // namespace cradon
