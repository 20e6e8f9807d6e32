#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "cradon/harness.hpp"
#include "cradon/radon_core.hpp"

using namespace cradon;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_2d_config(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.name = "tiny-2d";
  cfg.dim = 2;
  cfg.sector_order = 3;
  cfg.r_max = 24.0;
  cfg.fine_h = 0.02;
  cfg.fine_extent = 3.0;
  cfg.growth = 1.02;
  cfg.dt = 0.01;
  cfg.sino_angles = 18;
  cfg.sino_offsets = 61;
  cfg.band_half_width_deg = 10.0;
  cfg.threads = 1;
  cfg.out_dir = out_dir;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("config file round trip and validation") {
  const fs::path dir = fs::temp_directory_path() / "cradon_cfg_test";
  fs::create_directories(dir);
  const std::string path = (dir / "a.cfg").string();

  ExperimentConfig cfg = tiny_2d_config((dir / "out").string());
  cfg.noise_level = 0.5;
  cfg.noise_seed = 99;
  cfg.invert = true;
  cfg.image_n = 64;
  write_config(path, cfg);
  const ExperimentConfig back = load_config(path);
  CHECK(back.dim == cfg.dim);
  CHECK(back.sector_order == cfg.sector_order);
  CHECK(back.r_max == cfg.r_max);
  CHECK(back.fine_h == cfg.fine_h);
  CHECK(back.dt == cfg.dt);
  CHECK(back.noise_level == cfg.noise_level);
  CHECK(back.noise_seed == cfg.noise_seed);
  CHECK(back.sino_angles == cfg.sino_angles);
  CHECK(back.invert == cfg.invert);
  CHECK(back.image_n == cfg.image_n);
  CHECK(back.band_half_width_deg == cfg.band_half_width_deg);

  {
    std::ofstream bad(path);
    bad << "dim = 2\nnot_a_key = 4\n";
  }
  CHECK_THROWS_AS(load_config(path), std::runtime_error);
  {
    std::ofstream bad(path);
    bad << "dim = 2\nfine_h = -1\n";
  }
  CHECK_THROWS_AS(load_config(path), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("presets resolve and validate") {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig cfg = preset_config(name);
    CHECK(cfg.name == name);
    CHECK_NOTHROW(cfg.validate());
    CHECK_NOTHROW(cfg.phantom());
    const ExperimentConfig same = resolve_config(name);
    CHECK(same.dim == cfg.dim);
  }
  CHECK(preset_config("paper-2d-n3-noisy").noise_level == 1.0);
  CHECK(preset_config("paper-2d-n3-noisy").r_cut == 300.0);
  CHECK(preset_config("paper-3d-octant").dim == 3);
  CHECK_THROWS_AS(preset_config("nope"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_config("no/such/file.cfg"), std::runtime_error);
}

TEST_CASE("sinogram comparison metrics") {
  const Geometry geom = Geometry::sector2d(3);
  const Phantom ph = default_phantom_2d();
  std::vector<double> angles{0.3, 0.6, 0.8}, offsets{-0.9, -0.5, -0.1, 0.0};
  const Sinogram a = oracle_fundamental_sinogram(ph, geom, angles, {}, offsets);

  const SinogramComparison self = compare_sinograms(a, a, mask_all_valid(a, a));
  CHECK(self.rel_linf == 0.0);
  CHECK(self.rel_l2 == 0.0);

  Sinogram b = a;
  for (double& v : b.values) v *= 2.0;
  // against reference b = 2a: |a - b| = |a|, max |b| = 2 max |a|
  const SinogramComparison half = compare_sinograms(a, b, mask_all_valid(a, b));
  CHECK(half.rel_linf == doctest::Approx(0.5).epsilon(1e-12));

  Sinogram c = a;
  c.offsets[1] += 1e-3;
  CHECK_THROWS_AS(compare_sinograms(a, c, mask_all_valid(a, c)), std::invalid_argument);
  CHECK_THROWS_AS(compare_sinograms(a, b, std::vector<bool>(3, true)), std::invalid_argument);

  // masks: unknown cells drop out
  Sinogram d = a;
  d.mask[0] = CellMask::Unknown;
  const std::vector<bool> m = mask_all_valid(d, a);
  CHECK_FALSE(m[0]);
  CHECK(m[1]);

  const std::vector<bool> adm = mask_admissible(a, geom, 300.0, 1.0);
  const AdmissibleSet set = admissible_set(300.0, 1.0, geom);
  for (std::size_t i = 0; i < a.n1(); ++i)
    CHECK(adm[a.index(i, 0, 0)] == set.contains(unit2d(angles[i])));

  const std::vector<bool> off = mask_off_band(a, geom, 20.0);
  CHECK_FALSE(off[a.index(0, 0, 0)]);  // 0.3 rad = 17 deg from the 0 mirror
  CHECK(off[a.index(1, 0, 0)]);        // 0.6 rad = 34 deg, farther than 20 deg from both
}

TEST_CASE("experiment run writes artifacts and is deterministic") {
  const fs::path dir = fs::temp_directory_path() / "cradon_run_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny_2d_config((dir / "out1").string());
  const ErrorReport rep = run_experiment(cfg);

  CHECK(fs::exists(dir / "out1" / "config_used.txt"));
  CHECK(fs::exists(dir / "out1" / "phantom.txt"));
  CHECK(fs::exists(dir / "out1" / "sinogram_recon.csv"));
  CHECK(fs::exists(dir / "out1" / "sinogram_oracle.csv"));
  CHECK(fs::exists(dir / "out1" / "sinogram_extended.csv"));
  CHECK(fs::exists(dir / "out1" / "report.txt"));
  CHECK(fs::exists(dir / "out1" / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "out1" / "boundary_data.txt"));  // off by default

  CHECK(rep.cells > 0);
  CHECK(rep.rel_linf_admissible < 0.10);
  CHECK(rep.rel_linf_admissible > 0.0);
  CHECK(rep.cells_admissible + 0 < rep.cells);
  CHECK_FALSE(rep.bands.empty());
  std::size_t band_cells = 0;
  for (const BandError& b : rep.bands) band_cells += b.cells;
  CHECK(band_cells == rep.cells);  // bands partition the compared cells
  CHECK(rep.timings.size() >= 4);

  // byte-identical outputs on a second run
  cfg.out_dir = (dir / "out2").string();
  run_experiment(cfg);
  for (const char* f : {"sinogram_recon.csv", "sinogram_oracle.csv", "sinogram_extended.csv"})
    CHECK(slurp(dir / "out1" / f) == slurp(dir / "out2" / f));

  // thread count must not change results
  cfg.out_dir = (dir / "out4").string();
  cfg.threads = 4;
  run_experiment(cfg);
  CHECK(slurp(dir / "out1" / "sinogram_recon.csv") == slurp(dir / "out4" / "sinogram_recon.csv"));

  fs::remove_all(dir);
}

TEST_CASE("noisy experiment run is seed-deterministic") {
  const fs::path dir = fs::temp_directory_path() / "cradon_noise_run";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny_2d_config((dir / "a").string());
  cfg.noise_level = 1.0;
  cfg.noise_seed = 4242;
  cfg.r_cut = 20.0;
  const ErrorReport ra = run_experiment(cfg);
  cfg.out_dir = (dir / "b").string();
  run_experiment(cfg);
  CHECK(slurp(dir / "a" / "sinogram_recon.csv") == slurp(dir / "b" / "sinogram_recon.csv"));

  cfg.out_dir = (dir / "c").string();
  cfg.noise_seed = 4243;
  run_experiment(cfg);
  CHECK(slurp(dir / "a" / "sinogram_recon.csv") != slurp(dir / "c" / "sinogram_recon.csv"));

  // noise hurts but the sweep still runs; inadmissible bands are masked out
  CHECK(ra.rel_linf_admissible > 0.0);
  CHECK(ra.cells_admissible < ra.cells);
  fs::remove_all(dir);
}

TEST_CASE("experiment with inversion reports an image error") {
  const fs::path dir = fs::temp_directory_path() / "cradon_invert_run";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny_2d_config((dir / "out").string());
  cfg.sino_angles = 60;
  cfg.sino_offsets = 161;
  cfg.invert = true;
  cfg.image_n = 96;
  const ErrorReport rep = run_experiment(cfg);
  REQUIRE(rep.image_rel_l2.has_value());
  CHECK(*rep.image_rel_l2 < 0.12);
  CHECK(fs::exists(dir / "out" / "image.pgm"));
  CHECK(fs::exists(dir / "out" / "image.csv"));
  fs::remove_all(dir);
}
