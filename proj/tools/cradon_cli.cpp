// Command line driver for the corner-domain Radon reconstruction pipeline.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "cradon/boundary.hpp"
#include "cradon/forward.hpp"
#include "cradon/harness.hpp"
#include "cradon/radon_core.hpp"
#include "cradon/radon_invert.hpp"

namespace fs = std::filesystem;
using namespace cradon;

namespace {

struct CommonOpts {
  std::string config;
  std::string out_dir = "out";
  int threads = -1;
  long seed = -1;
};

ExperimentConfig make_config(const CommonOpts& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : resolve_config(o.config);
  if (o.threads >= 0) cfg.threads = o.threads;
  if (o.seed >= 0) cfg.noise_seed = static_cast<std::uint64_t>(o.seed);
  cfg.out_dir = o.out_dir;
  cfg.validate();
  return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const char* name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void add_common(CLI::App* app, CommonOpts& o, bool config_required = true) {
  auto* c = app->add_option("--config", o.config, "preset name or config file");
  if (config_required) c->required();
  app->add_option("--out", o.out_dir, "output directory");
  app->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  app->add_option("--seed", o.seed, "noise seed override");
}

int run_synth(const CommonOpts& o) {
  const ExperimentConfig cfg = make_config(o);
  const Phantom ph = cfg.phantom();
  const BoundaryGrid grid = build_boundary_grid(cfg.geometry(), cfg.r_max, cfg.fine_h,
                                                cfg.fine_extent, cfg.growth, cfg.grid_angular);
  SynthesisParams sp;
  sp.dt = cfg.dt;
  sp.threads = cfg.threads;
  BoundarySignal sig = synthesize_boundary_data(ph, grid, sp);
  if (cfg.noise_level > 0.0) sig = add_noise(sig, cfg.noise_level, cfg.noise_seed);
  write_boundary_signal(out_path(cfg, "boundary_data.txt"), sig);
  std::printf("synth: %zu nodes, %ld time samples, dt %g -> %s\n", grid.nodes.size(), sig.n_t,
              sig.dt, out_path(cfg, "boundary_data.txt").c_str());
  return 0;
}

std::vector<double> config_offsets(const ExperimentConfig& cfg, double r0) {
  std::vector<double> t(cfg.sino_offsets);
  for (int i = 0; i < cfg.sino_offsets; ++i)
    t[i] = -r0 + r0 * static_cast<double>(i) / static_cast<double>(cfg.sino_offsets - 1);
  t.back() = 0.0;
  return t;
}

std::vector<double> config_angles1(const ExperimentConfig& cfg) {
  const double span = cfg.dim == 2 ? M_PI / cfg.sector_order : 0.5 * M_PI;
  std::vector<double> g(cfg.sino_angles);
  for (int i = 0; i < cfg.sino_angles; ++i) g[i] = (i + 0.5) * span / cfg.sino_angles;
  return g;
}

std::vector<double> config_angles2(const ExperimentConfig& cfg) {
  if (cfg.dim != 3) return {};
  if (cfg.sino_phi_count <= 0) return {cfg.sino_phi_deg * M_PI / 180.0};
  std::vector<double> g(cfg.sino_phi_count);
  for (int i = 0; i < cfg.sino_phi_count; ++i)
    g[i] = (i + 0.5) * 0.5 * M_PI / cfg.sino_phi_count;
  return g;
}

int run_recon(const CommonOpts& o, const std::string& data_path) {
  const ExperimentConfig cfg = make_config(o);
  const BoundarySignal data = read_boundary_signal(data_path);
  const double r0 = phantom_support_radius(cfg.phantom());
  const Mollifier moll{cfg.mollifier_eps};
  const Sinogram s = reconstruct_fundamental_sinogram(
      data, config_angles1(cfg), config_angles2(cfg), config_offsets(cfg, r0), moll,
      cfg.r_cut > 0.0 ? cfg.r_cut : kNoCut, cfg.threads);
  write_sinogram_csv(out_path(cfg, "sinogram_recon.csv"), s);
  std::printf("recon-proj: %zu directions x %zu offsets -> %s\n", s.n1() * s.n2(), s.n_t(),
              out_path(cfg, "sinogram_recon.csv").c_str());
  return 0;
}

int run_oracle(const CommonOpts& o) {
  const ExperimentConfig cfg = make_config(o);
  const Phantom ph = cfg.phantom();
  const double r0 = phantom_support_radius(ph);
  const Sinogram s = oracle_fundamental_sinogram(ph, cfg.geometry(), config_angles1(cfg),
                                                 config_angles2(cfg), config_offsets(cfg, r0),
                                                 cfg.threads);
  write_sinogram_csv(out_path(cfg, "sinogram_oracle.csv"), s);
  std::printf("oracle-proj: %zu directions x %zu offsets -> %s\n", s.n1() * s.n2(), s.n_t(),
              out_path(cfg, "sinogram_oracle.csv").c_str());
  return 0;
}

int run_extend(const CommonOpts& o, const std::string& in_path) {
  const ExperimentConfig cfg = make_config(o);
  const Sinogram in = read_sinogram_csv(in_path);
  const Sinogram out = symmetry_extend(in, cfg.geometry());
  write_sinogram_csv(out_path(cfg, "sinogram_extended.csv"), out);
  std::printf("extend: %zu -> %zu directions, %zu offsets -> %s\n", in.n1() * in.n2(),
              out.n1() * out.n2(), out.n_t(), out_path(cfg, "sinogram_extended.csv").c_str());
  return 0;
}

int run_invert(const CommonOpts& o, const std::string& in_path) {
  const ExperimentConfig cfg = make_config(o);
  const Sinogram s = read_sinogram_csv(in_path);
  const double r0 = -s.offsets.front();
  const double half = cfg.image_pad * r0;
  const double h = 2.0 * half / cfg.image_n;
  const Vec3 lo{-half, -half, cfg.dim == 3 ? -half : 0.0};
  const Vec3 hi{half, half, cfg.dim == 3 ? half : 0.0};
  GridImage img = cfg.dim == 2 ? invert_radon_2d(s, lo, hi, h, cfg.threads, true)
                               : invert_radon_3d(s, lo, hi, h, cfg.threads, true);
  img = restrict_to_domain(img, cfg.geometry());
  if (cfg.dim == 2) {
    write_image_pgm(out_path(cfg, "image.pgm"), img);
    write_image_csv(out_path(cfg, "image.csv"), img);
    std::printf("invert: %dx%d image -> %s\n", img.nx, img.ny, out_path(cfg, "image.pgm").c_str());
  } else {
    write_image_slices(out_path(cfg, "image"), img);
    std::printf("invert: %dx%dx%d image -> %s_z*.pgm\n", img.nx, img.ny, img.nz,
                out_path(cfg, "image").c_str());
  }
  return 0;
}

int run_compare(const CommonOpts& o, const std::string& a_path, const std::string& b_path) {
  const Sinogram a = read_sinogram_csv(a_path);
  const Sinogram b = read_sinogram_csv(b_path);
  const SinogramComparison c = compare_sinograms(a, b, mask_all_valid(a, b));
  std::printf("compare: rel_linf %.8g  rel_l2 %.8g  cells %zu\n", c.rel_linf, c.rel_l2, c.cells);
  if (!o.out_dir.empty()) {
    ErrorReport rep;
    rep.rel_linf = c.rel_linf;
    rep.rel_l2 = c.rel_l2;
    rep.cells = c.cells;
    ExperimentConfig cfg;
    cfg.out_dir = o.out_dir;
    write_report(out_path(cfg, "compare.txt"), out_path(cfg, "compare.csv"), rep);
  }
  return 0;
}

int run_full(const CommonOpts& o, const std::string& what) {
  CommonOpts opts = o;
  opts.config = what;
  const ExperimentConfig cfg = make_config(opts);
  const ErrorReport rep = run_experiment(cfg);
  std::printf("run %s: rel_linf %.6g (admissible %.6g, off-band %.6g)\n", what.c_str(),
              rep.rel_linf, rep.rel_linf_admissible, rep.rel_linf_offband);
  if (rep.image_rel_l2) std::printf("run %s: image rel_l2 %.6g\n", what.c_str(), *rep.image_rel_l2);
  std::printf("report: %s\n", (fs::path(cfg.out_dir) / "report.txt").string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radon projections of an initial acoustic pressure from wave-equation\n"
               "boundary data on corner-like detector surfaces, and their inversion."};
  app.require_subcommand(1);

  CommonOpts o;
  std::string data_path, in_path, a_path, b_path, run_what;

  auto* synth = app.add_subcommand("synth", "synthesize boundary pressure data");
  add_common(synth, o);

  auto* recon = app.add_subcommand("recon-proj", "reconstruct projections from boundary data");
  add_common(recon, o);
  recon->add_option("--data", data_path, "boundary data file")->required();

  auto* oracle = app.add_subcommand("oracle-proj", "exact projections of the odd-extended phantom");
  add_common(oracle, o);

  auto* extend = app.add_subcommand("extend", "extend a fundamental sinogram by symmetry");
  add_common(extend, o);
  extend->add_option("--in", in_path, "fundamental sinogram csv")->required();

  auto* invert = app.add_subcommand("invert", "filtered backprojection of an extended sinogram");
  add_common(invert, o);
  invert->add_option("--in", in_path, "extended sinogram csv")->required();

  auto* compare = app.add_subcommand("compare", "compare two sinograms on a shared grid");
  compare->add_option("--a", a_path, "sinogram csv")->required();
  compare->add_option("--b", b_path, "reference sinogram csv")->required();
  compare->add_option("--out", o.out_dir, "output directory");

  auto* run = app.add_subcommand("run", "run a full experiment (preset or config file)");
  run->add_option("what", run_what, "preset name or config path")->required();
  run->add_option("--out", o.out_dir, "output directory");
  run->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  run->add_option("--seed", o.seed, "noise seed override");

  CLI11_PARSE(app, argc, argv);

  const char* stage = "cli";
  try {
    if (synth->parsed()) { stage = "synth"; return run_synth(o); }
    if (recon->parsed()) { stage = "recon-proj"; return run_recon(o, data_path); }
    if (oracle->parsed()) { stage = "oracle-proj"; return run_oracle(o); }
    if (extend->parsed()) { stage = "extend"; return run_extend(o, in_path); }
    if (invert->parsed()) { stage = "invert"; return run_invert(o, in_path); }
    if (compare->parsed()) { stage = "compare"; return run_compare(o, a_path, b_path); }
    if (run->parsed()) { stage = "run"; return run_full(o, run_what); }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "[%s] error: %s\n", stage, e.what());
    return 1;
  }
  return 1;
}
