#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "bcv/errors.hpp"
#include "bcv/reconstruct.hpp"

namespace bcv {

namespace {

void check_compatible(const SurfaceMesh& mesh, Projection projection) {
  if (mesh.vertices.size() != mesh.chart.size()) throw PreconditionError("mesh vertex count does not match its chart");
  check_projection(mesh.params, projection);
}

std::array<double, 3> project(const Vec4& x, double kappa, Projection projection) {
  const double r = std::sqrt(std::abs(kappa));
  const double x0 = x[0] * r, x1 = x[1] * r, x2 = x[2] * r;
  if (projection == Projection::PoincareDiskXR) return {x1 / (1.0 + x0), x2 / (1.0 + x0), x[3]};
  return {std::acos(std::clamp(x2, -1.0, 1.0)), std::atan2(x1, x0), x[3]};
}

}  // namespace

void check_projection(const SpaceParams& params, Projection projection) {
  if (projection == Projection::PoincareDiskXR && params.kappa() >= 0.0) {
    throw PreconditionError("PoincareDiskXR needs kappa < 0");
  }
  if (projection == Projection::SphereXR_unrolled && params.kappa() <= 0.0) {
    throw PreconditionError("SphereXR_unrolled needs kappa > 0");
  }
}

Projection parse_projection(std::string_view name) {
  if (name == "PoincareDiskXR") return Projection::PoincareDiskXR;
  if (name == "SphereXR_unrolled") return Projection::SphereXR_unrolled;
  if (name == "Raw4D_csv") return Projection::Raw4D_csv;
  throw PreconditionError("unknown projection '" + std::string(name) + "'");
}

void write_raw_csv(std::ostream& out, const SurfaceMesh& mesh) {
  const auto old_precision = out.precision(17);
  out << "x0,x1,x2,h\n";
  for (const Vec4& v : mesh.vertices) out << v[0] << ',' << v[1] << ',' << v[2] << ',' << v[3] << '\n';
  out.precision(old_precision);
}

void write_obj(std::ostream& out, const SurfaceMesh& mesh, Projection projection) {
  check_compatible(mesh, projection);
  if (projection == Projection::Raw4D_csv) {
    write_raw_csv(out, mesh);
    return;
  }
  const auto old_precision = out.precision(17);
  const Chart& chart = mesh.chart;
  for (const Vec4& v : mesh.vertices) {
    const auto q = project(v, mesh.params.kappa(), projection);
    out << "v " << q[0] << ' ' << q[1] << ' ' << q[2] << '\n';
  }
  auto idx = [&](int i, int j) { return static_cast<long>(j) * chart.ns + i + 1; };
  for (int j = 0; j + 1 < chart.nt; ++j) {
    for (int i = 0; i + 1 < chart.ns; ++i) {
      out << "f " << idx(i, j) << ' ' << idx(i + 1, j) << ' ' << idx(i + 1, j + 1) << '\n';
      out << "f " << idx(i, j) << ' ' << idx(i + 1, j + 1) << ' ' << idx(i, j + 1) << '\n';
    }
  }
  out.precision(old_precision);
}

void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path, Projection projection) {
  check_compatible(mesh, projection);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_obj(out, mesh, projection);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace bcv
