#include "cradon/sinogram.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cradon {

const char* to_string(CellMask m) {
  switch (m) {
    case CellMask::Computed: return "computed";
    case CellMask::Extended: return "extended";
    case CellMask::Zero: return "zero";
    case CellMask::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

CellMask mask_from_string(const std::string& s) {
  if (s == "computed") return CellMask::Computed;
  if (s == "extended") return CellMask::Extended;
  if (s == "zero") return CellMask::Zero;
  if (s == "unknown") return CellMask::Unknown;
  throw std::runtime_error("sinogram csv: bad mask value '" + s + "'");
}

void push_unique(std::vector<double>& grid, double v) {
  if (grid.empty() || grid.back() != v) grid.push_back(v);
}

}  // namespace

void write_sinogram_csv(const std::string& path, const Sinogram& s) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot write sinogram csv: " + path);
  std::fprintf(out, s.dim == 2 ? "dim,angle1_rad,t,value,mask\n"
                               : "dim,angle1_rad,angle2_rad,t,value,mask\n");
  for (std::size_t i1 = 0; i1 < s.n1(); ++i1)
    for (std::size_t i2 = 0; i2 < s.n2(); ++i2)
      for (std::size_t it = 0; it < s.n_t(); ++it) {
        const std::size_t c = s.index(i1, i2, it);
        if (s.dim == 2)
          std::fprintf(out, "2,%.17g,%.17g,%.17g,%s\n", s.angles1[i1], s.offsets[it],
                       s.values[c], to_string(s.mask[c]));
        else
          std::fprintf(out, "3,%.17g,%.17g,%.17g,%.17g,%s\n", s.angles1[i1], s.angles2[i2],
                       s.offsets[it], s.values[c], to_string(s.mask[c]));
      }
  std::fclose(out);
}

Sinogram read_sinogram_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sinogram csv: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("sinogram csv: empty file " + path);

  Sinogram s;
  s.dim = (line.find("angle2_rad") != std::string::npos) ? 3 : 2;

  struct Row {
    double a1, a2, t, v;
    CellMask m;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    int dim;
    Row r{0, 0, 0, 0, CellMask::Unknown};
    std::string m;
    bool ok = static_cast<bool>(ls >> dim >> r.a1);
    if (ok && s.dim == 3) ok = static_cast<bool>(ls >> r.a2);
    if (ok) ok = static_cast<bool>(ls >> r.t >> r.v >> m);
    if (!ok || dim != s.dim) throw std::runtime_error("sinogram csv: malformed row in " + path);
    r.m = mask_from_string(m);
    rows.push_back(r);
  }
  // Rows are written in canonical nested order; rebuild the grids from the
  // order of first appearance.
  for (const Row& r : rows) push_unique(s.angles1, r.a1);
  if (s.dim == 3) {
    for (std::size_t i = 0; i < rows.size() && rows[i].a1 == rows[0].a1; ++i)
      push_unique(s.angles2, rows[i].a2);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].a1 != rows[0].a1 || (s.dim == 3 && rows[i].a2 != rows[0].a2)) break;
    push_unique(s.offsets, rows[i].t);
  }
  if (rows.size() != s.n_cells())
    throw std::runtime_error("sinogram csv: row count does not match grid in " + path);
  s.allocate();
  for (std::size_t c = 0; c < rows.size(); ++c) {
    s.values[c] = rows[c].v;
    s.mask[c] = rows[c].m;
  }
  return s;
}

double Mollifier::profile(double u) const {
  const double a = std::abs(u);
  if (a >= 1.0) return 0.0;
  const double q = 1.0 - a * a;
  const double q2 = q * q;
  return (315.0 / 256.0) * q2 * q2;
}

double Mollifier::operator()(double t) const {
  if (eps <= 0.0) throw std::logic_error("Mollifier: evaluation requires eps > 0");
  return profile(t / eps) / eps;
}

}  // namespace cradon
