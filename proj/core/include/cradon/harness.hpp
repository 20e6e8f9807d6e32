#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cradon/geometry.hpp"
#include "cradon/phantom.hpp"
#include "cradon/sinogram.hpp"

namespace cradon {

// Experiment description, loadable from plain "key = value" files with '#'
// comments. All numeric fields are validated against the preconditions of
// the stages they feed before anything runs.
struct ExperimentConfig {
  std::string name = "custom";

  int dim = 2;
  int sector_order = 3;
  std::string phantom_path;  // empty: built-in default for the dimension

  // boundary grid
  double r_max = 300.0;
  double fine_h = 0.005;
  double fine_extent = 4.0;
  double growth = 1.005;
  int grid_angular = 384;  // 3D faces: angular cells on [0, pi/2]

  // synthesis
  double dt = 0.005;
  double noise_level = 0.0;
  std::uint64_t noise_seed = 1;

  // sinogram grids
  int sino_angles = 120;       // fundamental directions (2D gamma / 3D theta)
  int sino_phi_count = 0;      // 3D: polar grid size; 0 selects a fixed slice
  double sino_phi_deg = 53.0;  // 3D: fixed polar slice when sino_phi_count == 0
  int sino_offsets = 201;      // offsets spanning [-r0, 0]

  // reconstruction
  double r_cut = 0.0;  // <= 0: use the whole grid
  double mollifier_eps = 0.0;

  // inversion
  bool invert = false;
  int image_n = 256;       // pixels per axis
  double image_pad = 1.1;  // image half-extent = pad * r0

  // reporting
  double band_half_width_deg = 7.0;  // 2D near-mirror exclusion band

  bool write_boundary = false;
  bool write_extended = true;
  int threads = 0;
  std::string out_dir = "out";

  Geometry geometry() const;
  Phantom phantom() const;
  void validate() const;
};

ExperimentConfig load_config(const std::string& path);
void write_config(const std::string& path, const ExperimentConfig& cfg);

// Built-in presets: paper-2d-n3, paper-2d-n3-noisy, paper-3d-octant.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();
// Named preset, or a config file path when no preset matches.
ExperimentConfig resolve_config(const std::string& name_or_path);

struct BandError {
  double lo_deg = 0.0, hi_deg = 0.0;
  double rel_linf = 0.0;
  std::size_t cells = 0;
  bool excluded = false;  // inside the near-mirror exclusion band
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct ErrorReport {
  // relative errors of the reconstructed sinogram against the oracle
  double rel_linf = 0.0;
  double rel_l2 = 0.0;
  std::size_t cells = 0;
  // same, restricted to directions admissible at the grid extent
  double rel_linf_admissible = 0.0;
  double rel_l2_admissible = 0.0;
  std::size_t cells_admissible = 0;
  // same, excluding the near-mirror angular bands
  double rel_linf_offband = 0.0;
  double rel_l2_offband = 0.0;
  std::size_t cells_offband = 0;

  std::vector<BandError> bands;
  std::optional<double> image_rel_l2;  // set when the pipeline inverted
  std::vector<StageTiming> timings;
};

void write_report(const std::string& txt_path, const std::string& csv_path,
                  const ErrorReport& rep);

// Relative L_inf / L2 of a against reference b over an explicit cell mask.
struct SinogramComparison {
  double rel_linf = 0.0;
  double rel_l2 = 0.0;
  std::size_t cells = 0;
};

SinogramComparison compare_sinograms(const Sinogram& a, const Sinogram& b,
                                     const std::vector<bool>& mask);

// Mask helpers. All require grids of `s`; cells whose mask is Unknown in
// either sinogram are excluded by compare_masked entry points.
std::vector<bool> mask_all_valid(const Sinogram& a, const Sinogram& b);
std::vector<bool> mask_admissible(const Sinogram& s, const Geometry& geom, double R, double r0);
// 2D: drops directions within half_width_deg of a mirror angle k*beta.
std::vector<bool> mask_off_band(const Sinogram& s, const Geometry& geom, double half_width_deg);
// 3D: keeps directions whose truncation radius (with 5% headroom) fits R.
std::vector<bool> mask_within_truncation(const Sinogram& s, const Geometry& geom, double R,
                                         double r0);

// Full pipeline: synthesize (+noise), reconstruct the fundamental sinogram,
// compare with the closed-form oracle, extend, optionally invert and
// restrict, and write all artifacts into cfg.out_dir.
ErrorReport run_experiment(const ExperimentConfig& cfg);

}  // namespace cradon
