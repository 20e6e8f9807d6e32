#include "cradon/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cradon/boundary.hpp"
#include "cradon/forward.hpp"
#include "cradon/radon_core.hpp"
#include "cradon/radon_invert.hpp"

namespace cradon {

Geometry ExperimentConfig::geometry() const {
  return dim == 2 ? Geometry::sector2d(sector_order) : Geometry::octant3d();
}

Phantom ExperimentConfig::phantom() const {
  Phantom ph = phantom_path.empty()
                   ? (dim == 2 ? default_phantom_2d() : default_phantom_3d())
                   : read_phantom(phantom_path, dim);
  validate_phantom(ph, geometry());
  return ph;
}

void ExperimentConfig::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("config: dim must be 2 or 3");
  if (dim == 2 && sector_order < 2) throw std::invalid_argument("config: sector_order >= 2");
  if (!(0.0 < fine_h && fine_h < fine_extent && fine_extent < r_max))
    throw std::invalid_argument("config: need 0 < fine_h < fine_extent < r_max");
  if (growth <= 1.0) throw std::invalid_argument("config: growth must exceed 1");
  if (dim == 3 && grid_angular < 1) throw std::invalid_argument("config: grid_angular >= 1");
  if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
  if (noise_level < 0.0) throw std::invalid_argument("config: noise_level >= 0");
  if (sino_angles < 1 || sino_offsets < 2)
    throw std::invalid_argument("config: sinogram grids too small");
  if (dim == 3 && sino_phi_count == 0 && !(sino_phi_deg > 0.0 && sino_phi_deg < 90.0))
    throw std::invalid_argument("config: sino_phi_deg must lie in (0, 90)");
  if (mollifier_eps < 0.0) throw std::invalid_argument("config: mollifier_eps >= 0");
  if (invert && image_n < 8) throw std::invalid_argument("config: image_n too small");
  if (invert && image_pad <= 0.0) throw std::invalid_argument("config: image_pad > 0");
  if (band_half_width_deg < 0.0) throw std::invalid_argument("config: band_half_width_deg >= 0");
}

namespace {

template <typename T>
void parse_into(const std::string& v, T& out) {
  std::istringstream ss(v);
  ss >> out;
  if (ss.fail()) throw std::invalid_argument("config: cannot parse value '" + v + "'");
}

void parse_into(const std::string& v, bool& out) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") out = true;
  else if (v == "0" || v == "false" || v == "off" || v == "no") out = false;
  else throw std::invalid_argument("config: cannot parse boolean '" + v + "'");
}

void parse_into(const std::string& v, std::string& out) { out = v; }

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  ExperimentConfig cfg;
  cfg.name = std::filesystem::path(path).stem().string();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error("config: malformed line " + std::to_string(lineno));
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "dim") parse_into(val, cfg.dim);
    else if (key == "sector_order") parse_into(val, cfg.sector_order);
    else if (key == "phantom") parse_into(val, cfg.phantom_path);
    else if (key == "r_max") parse_into(val, cfg.r_max);
    else if (key == "fine_h") parse_into(val, cfg.fine_h);
    else if (key == "fine_extent") parse_into(val, cfg.fine_extent);
    else if (key == "growth") parse_into(val, cfg.growth);
    else if (key == "grid_angular") parse_into(val, cfg.grid_angular);
    else if (key == "dt") parse_into(val, cfg.dt);
    else if (key == "noise_level") parse_into(val, cfg.noise_level);
    else if (key == "noise_seed") parse_into(val, cfg.noise_seed);
    else if (key == "sino_angles") parse_into(val, cfg.sino_angles);
    else if (key == "sino_phi_count") parse_into(val, cfg.sino_phi_count);
    else if (key == "sino_phi_deg") parse_into(val, cfg.sino_phi_deg);
    else if (key == "sino_offsets") parse_into(val, cfg.sino_offsets);
    else if (key == "r_cut") parse_into(val, cfg.r_cut);
    else if (key == "mollifier_eps") parse_into(val, cfg.mollifier_eps);
    else if (key == "invert") parse_into(val, cfg.invert);
    else if (key == "image_n") parse_into(val, cfg.image_n);
    else if (key == "image_pad") parse_into(val, cfg.image_pad);
    else if (key == "band_half_width_deg") parse_into(val, cfg.band_half_width_deg);
    else if (key == "write_boundary") parse_into(val, cfg.write_boundary);
    else if (key == "write_extended") parse_into(val, cfg.write_extended);
    else if (key == "threads") parse_into(val, cfg.threads);
    else if (key == "out_dir") parse_into(val, cfg.out_dir);
    else throw std::runtime_error("config: unknown key '" + key + "' on line " +
                                  std::to_string(lineno));
  }
  cfg.validate();
  return cfg;
}

void write_config(const std::string& path, const ExperimentConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << "# " << cfg.name << "\n";
  out << "dim = " << cfg.dim << "\n";
  if (cfg.dim == 2) out << "sector_order = " << cfg.sector_order << "\n";
  if (!cfg.phantom_path.empty()) out << "phantom = " << cfg.phantom_path << "\n";
  char buf[128];
  auto num = [&](const char* k, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", k, v);
    out << buf;
  };
  num("r_max", cfg.r_max);
  num("fine_h", cfg.fine_h);
  num("fine_extent", cfg.fine_extent);
  num("growth", cfg.growth);
  if (cfg.dim == 3) out << "grid_angular = " << cfg.grid_angular << "\n";
  num("dt", cfg.dt);
  num("noise_level", cfg.noise_level);
  out << "noise_seed = " << cfg.noise_seed << "\n";
  out << "sino_angles = " << cfg.sino_angles << "\n";
  if (cfg.dim == 3) {
    out << "sino_phi_count = " << cfg.sino_phi_count << "\n";
    num("sino_phi_deg", cfg.sino_phi_deg);
  }
  out << "sino_offsets = " << cfg.sino_offsets << "\n";
  num("r_cut", cfg.r_cut);
  num("mollifier_eps", cfg.mollifier_eps);
  out << "invert = " << (cfg.invert ? 1 : 0) << "\n";
  out << "image_n = " << cfg.image_n << "\n";
  num("image_pad", cfg.image_pad);
  num("band_half_width_deg", cfg.band_half_width_deg);
  out << "write_boundary = " << (cfg.write_boundary ? 1 : 0) << "\n";
  out << "write_extended = " << (cfg.write_extended ? 1 : 0) << "\n";
  out << "threads = " << cfg.threads << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
}

ExperimentConfig preset_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "paper-2d-n3") {
    // defaults already describe this run
  } else if (name == "paper-2d-n3-noisy") {
    cfg.noise_level = 1.0;
    cfg.noise_seed = 20260809;
    cfg.r_cut = 300.0;
  } else if (name == "paper-3d-octant") {
    cfg.dim = 3;
    cfg.r_max = 50.0;
    cfg.fine_h = 0.0125;
    cfg.fine_extent = 4.0;
    cfg.growth = 1.005;
    cfg.grid_angular = 384;
    cfg.dt = 0.005;
    cfg.sino_angles = 90;
    cfg.sino_phi_count = 0;
    cfg.sino_phi_deg = 53.0;
    cfg.sino_offsets = 201;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  cfg.validate();
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"paper-2d-n3", "paper-2d-n3-noisy", "paper-3d-octant"};
}

ExperimentConfig resolve_config(const std::string& name_or_path) {
  for (const std::string& p : preset_names())
    if (p == name_or_path) return preset_config(p);
  return load_config(name_or_path);
}

SinogramComparison compare_sinograms(const Sinogram& a, const Sinogram& b,
                                     const std::vector<bool>& mask) {
  if (a.dim != b.dim || a.angles1 != b.angles1 || a.angles2 != b.angles2 ||
      a.offsets != b.offsets)
    throw std::invalid_argument("compare_sinograms: grids differ");
  if (mask.size() != a.n_cells())
    throw std::invalid_argument("compare_sinograms: mask size mismatch");
  SinogramComparison r;
  double max_ref = 0.0, max_diff = 0.0, sum_ref = 0.0, sum_diff = 0.0;
  for (std::size_t c = 0; c < mask.size(); ++c) {
    if (!mask[c]) continue;
    ++r.cells;
    const double d = a.values[c] - b.values[c];
    max_ref = std::max(max_ref, std::abs(b.values[c]));
    max_diff = std::max(max_diff, std::abs(d));
    sum_ref += b.values[c] * b.values[c];
    sum_diff += d * d;
  }
  r.rel_linf = max_ref > 0.0 ? max_diff / max_ref : (max_diff > 0.0 ? INFINITY : 0.0);
  r.rel_l2 = sum_ref > 0.0 ? std::sqrt(sum_diff / sum_ref) : (sum_diff > 0.0 ? INFINITY : 0.0);
  return r;
}

std::vector<bool> mask_all_valid(const Sinogram& a, const Sinogram& b) {
  std::vector<bool> m(a.n_cells());
  for (std::size_t c = 0; c < m.size(); ++c)
    m[c] = a.mask[c] != CellMask::Unknown && b.mask[c] != CellMask::Unknown;
  return m;
}

std::vector<bool> mask_admissible(const Sinogram& s, const Geometry& geom, double R, double r0) {
  const AdmissibleSet adm = admissible_set(R, r0, geom);
  std::vector<bool> m(s.n_cells(), false);
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2) {
      const bool ok = adm.contains(s.direction(i1, i2));
      for (std::size_t it = 0; it < s.n_t(); ++it) m[s.index(i1, i2, it)] = ok;
    }
  return m;
}

std::vector<bool> mask_off_band(const Sinogram& s, const Geometry& geom, double half_width_deg) {
  const double beta = geom.sector_angle();
  const double hw = half_width_deg * M_PI / 180.0;
  std::vector<bool> m(s.n_cells(), false);
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1) {
    const double g = s.angles1[i1];
    const double frac = g / beta - std::floor(g / beta);
    const bool ok = std::min(frac, 1.0 - frac) * beta >= hw;
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2)
      for (std::size_t it = 0; it < s.n_t(); ++it) m[s.index(i1, i2, it)] = ok;
  }
  return m;
}

std::vector<bool> mask_within_truncation(const Sinogram& s, const Geometry& geom, double R,
                                         double r0) {
  std::vector<bool> m(s.n_cells(), false);
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2) {
      const Vec3 w = s.direction(i1, i2);
      bool ok = is_strictly_interior(w, geom);
      if (ok) ok = 1.05 * truncation_radius(w, 0.0, r0, geom) <= R;
      for (std::size_t it = 0; it < s.n_t(); ++it) m[s.index(i1, i2, it)] = ok;
    }
  return m;
}

namespace {

std::vector<bool> mask_and(std::vector<bool> a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
  return a;
}

std::vector<double> fundamental_angles(int count, double span) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = (i + 0.5) * span / count;
  return g;
}

std::vector<double> offset_grid(double r0, int count) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i)
    t[i] = -r0 + r0 * static_cast<double>(i) / static_cast<double>(count - 1);
  t.back() = 0.0;
  return t;
}

struct StageClock {
  std::vector<StageTiming>& sink;
  std::string stage;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  StageClock(std::vector<StageTiming>& s, std::string name) : sink(s), stage(std::move(name)) {}
  ~StageClock() {
    const auto dt = std::chrono::steady_clock::now() - start;
    sink.push_back({stage, std::chrono::duration<double>(dt).count()});
  }
};

double image_rel_l2_vs_phantom(const GridImage& img, const Phantom& ph, const Geometry& geom,
                               double r0) {
  double num = 0.0, den = 0.0;
  for (int iz = 0; iz < img.nz; ++iz)
    for (int iy = 0; iy < img.ny; ++iy)
      for (int ix = 0; ix < img.nx; ++ix) {
        const Vec3 c = img.center(ix, iy, iz);
        bool inside = norm(c) <= r0;
        if (inside) {
          if (geom.dim == 2) {
            const double beta = geom.sector_angle();
            inside = c.y > 0.0 && c.x * std::sin(beta) - c.y * std::cos(beta) > 0.0;
          } else {
            inside = c.x > 0.0 && c.y > 0.0 && c.z > 0.0;
          }
        }
        if (!inside) continue;
        const double f = eval_phantom(ph, c);
        const double d = img.v[img.index(ix, iy, iz)] - f;
        num += d * d;
        den += f * f;
      }
  if (den == 0.0) throw std::runtime_error("image comparison: phantom vanishes on the grid");
  return std::sqrt(num / den);
}

}  // namespace

void write_report(const std::string& txt_path, const std::string& csv_path,
                  const ErrorReport& rep) {
  {
    std::ofstream out(txt_path);
    if (!out) throw std::runtime_error("cannot write report: " + txt_path);
    char buf[256];
    auto row = [&](const char* name, double linf, double l2, std::size_t cells) {
      std::snprintf(buf, sizeof buf, "%-28s rel_linf %.6g   rel_l2 %.6g   cells %zu\n", name,
                    linf, l2, cells);
      out << buf;
    };
    row("all valid cells", rep.rel_linf, rep.rel_l2, rep.cells);
    row("admissible directions", rep.rel_linf_admissible, rep.rel_l2_admissible,
        rep.cells_admissible);
    row("off-band directions", rep.rel_linf_offband, rep.rel_l2_offband, rep.cells_offband);
    if (rep.image_rel_l2) {
      std::snprintf(buf, sizeof buf, "%-28s rel_l2 %.6g\n", "image vs phantom", *rep.image_rel_l2);
      out << buf;
    }
    if (!rep.bands.empty()) {
      out << "\nper-band relative L_inf (degrees from the nearest mirror):\n";
      for (const BandError& b : rep.bands) {
        std::snprintf(buf, sizeof buf, "  [%6.2f, %6.2f)%s  rel_linf %.6g  cells %zu\n", b.lo_deg,
                      b.hi_deg, b.excluded ? " excluded" : "         ", b.rel_linf, b.cells);
        out << buf;
      }
    }
    out << "\ntimings:\n";
    for (const StageTiming& t : rep.timings) {
      std::snprintf(buf, sizeof buf, "  %-16s %.3f s\n", t.stage.c_str(), t.seconds);
      out << buf;
    }
  }
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write report: " + csv_path);
    char buf[256];
    out << "metric,value\n";
    auto kv = [&](const char* k, double v) {
      std::snprintf(buf, sizeof buf, "%s,%.17g\n", k, v);
      out << buf;
    };
    kv("rel_linf", rep.rel_linf);
    kv("rel_l2", rep.rel_l2);
    kv("rel_linf_admissible", rep.rel_linf_admissible);
    kv("rel_l2_admissible", rep.rel_l2_admissible);
    kv("rel_linf_offband", rep.rel_linf_offband);
    kv("rel_l2_offband", rep.rel_l2_offband);
    if (rep.image_rel_l2) kv("image_rel_l2", *rep.image_rel_l2);
    for (const BandError& b : rep.bands) {
      std::snprintf(buf, sizeof buf, "band_%g_%g%s,%.17g\n", b.lo_deg, b.hi_deg,
                    b.excluded ? "_excluded" : "", b.rel_linf);
      out << buf;
    }
    for (const StageTiming& t : rep.timings) kv(("time_" + t.stage).c_str(), t.seconds);
  }
}

ErrorReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Geometry geom = cfg.geometry();
  const Phantom ph = cfg.phantom();
  const double r0 = phantom_support_radius(ph);
  const double r_cut = cfg.r_cut > 0.0 ? cfg.r_cut : kNoCut;

  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const auto path = [&](const char* f) { return (fs::path(cfg.out_dir) / f).string(); };
  write_config(path("config_used.txt"), cfg);
  write_phantom(path("phantom.txt"), ph);

  ErrorReport rep;
  BoundarySignal data;
  {
    StageClock clock(rep.timings, "synth");
    const BoundaryGrid grid = build_boundary_grid(geom, cfg.r_max, cfg.fine_h, cfg.fine_extent,
                                                  cfg.growth, cfg.grid_angular);
    SynthesisParams sp;
    sp.dt = cfg.dt;
    sp.threads = cfg.threads;
    data = synthesize_boundary_data(ph, grid, sp);
    if (cfg.noise_level > 0.0) data = add_noise(data, cfg.noise_level, cfg.noise_seed);
  }
  if (cfg.write_boundary) {
    StageClock clock(rep.timings, "write-boundary");
    write_boundary_signal(path("boundary_data.txt"), data);
  }

  const std::vector<double> offsets = offset_grid(r0, cfg.sino_offsets);
  const std::vector<double> angles1 =
      fundamental_angles(cfg.sino_angles, geom.dim == 2 ? geom.sector_angle() : 0.5 * M_PI);
  std::vector<double> angles2;
  if (geom.dim == 3)
    angles2 = cfg.sino_phi_count > 0 ? fundamental_angles(cfg.sino_phi_count, 0.5 * M_PI)
                                     : std::vector<double>{cfg.sino_phi_deg * M_PI / 180.0};

  Sinogram recon, oracle;
  {
    StageClock clock(rep.timings, "reconstruct");
    Mollifier moll{cfg.mollifier_eps};
    recon = reconstruct_fundamental_sinogram(data, angles1, angles2, offsets, moll, r_cut,
                                             cfg.threads);
  }
  {
    StageClock clock(rep.timings, "oracle");
    oracle = oracle_fundamental_sinogram(ph, geom, angles1, angles2, offsets, cfg.threads);
  }
  write_sinogram_csv(path("sinogram_recon.csv"), recon);
  write_sinogram_csv(path("sinogram_oracle.csv"), oracle);

  {
    StageClock clock(rep.timings, "compare");
    const std::vector<bool> valid = mask_all_valid(recon, oracle);
    const SinogramComparison all = compare_sinograms(recon, oracle, valid);
    rep.rel_linf = all.rel_linf;
    rep.rel_l2 = all.rel_l2;
    rep.cells = all.cells;

    const std::vector<bool> adm =
        geom.dim == 2 ? mask_admissible(recon, geom, std::min(cfg.r_max, r_cut), r0)
                      : mask_within_truncation(recon, geom, std::min(cfg.r_max, r_cut), r0);
    const SinogramComparison admc = compare_sinograms(recon, oracle, mask_and(valid, adm));
    rep.rel_linf_admissible = admc.rel_linf;
    rep.rel_l2_admissible = admc.rel_l2;
    rep.cells_admissible = admc.cells;

    std::vector<bool> off = geom.dim == 2
                                ? mask_off_band(recon, geom, cfg.band_half_width_deg)
                                : adm;
    const SinogramComparison offc = compare_sinograms(recon, oracle, mask_and(valid, off));
    rep.rel_linf_offband = offc.rel_linf;
    rep.rel_l2_offband = offc.rel_l2;
    rep.cells_offband = offc.cells;

    if (geom.dim == 2) {
      // Error resolved by angular distance to the nearest mirror.
      const double beta_deg = 180.0 / geom.sector_order;
      const double step = 1.0;
      for (double lo = 0.0; lo < 0.5 * beta_deg; lo += step) {
        BandError band;
        band.lo_deg = lo;
        band.hi_deg = std::min(lo + step, 0.5 * beta_deg);
        band.excluded = band.hi_deg <= cfg.band_half_width_deg;
        std::vector<bool> m(recon.n_cells(), false);
        for (std::size_t i1 = 0; i1 < recon.n1(); ++i1) {
          const double g = recon.angles1[i1] * 180.0 / M_PI;
          const double d = std::min(g - std::floor(g / beta_deg) * beta_deg,
                                    std::ceil(g / beta_deg) * beta_deg - g);
          if (d < band.lo_deg || d >= band.hi_deg) continue;
          for (std::size_t it = 0; it < recon.n_t(); ++it)
            m[recon.index(i1, 0, it)] = valid[recon.index(i1, 0, it)];
        }
        const SinogramComparison bc = compare_sinograms(recon, oracle, m);
        band.rel_linf = bc.rel_linf;
        band.cells = bc.cells;
        if (band.cells > 0) rep.bands.push_back(band);
      }
    }
  }

  Sinogram extended;
  {
    StageClock clock(rep.timings, "extend");
    extended = symmetry_extend(recon, geom);
    if (cfg.write_extended) write_sinogram_csv(path("sinogram_extended.csv"), extended);
  }

  if (cfg.invert) {
    StageClock clock(rep.timings, "invert");
    const double half = cfg.image_pad * r0;
    const double h = 2.0 * half / cfg.image_n;
    const Vec3 lo{-half, -half, geom.dim == 3 ? -half : 0.0};
    const Vec3 hi{half, half, geom.dim == 3 ? half : 0.0};
    GridImage img = geom.dim == 2 ? invert_radon_2d(extended, lo, hi, h, cfg.threads, true)
                                  : invert_radon_3d(extended, lo, hi, h, cfg.threads, true);
    img = restrict_to_domain(img, geom);
    rep.image_rel_l2 = image_rel_l2_vs_phantom(img, ph, geom, r0);
    if (geom.dim == 2) {
      write_image_pgm(path("image.pgm"), img);
      write_image_csv(path("image.csv"), img);
    } else {
      write_image_slices(path("image"), img);
    }
  }

  write_report(path("report.txt"), path("report.csv"), rep);
  return rep;
}

}  // namespace cradon
