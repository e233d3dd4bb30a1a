#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "bcv/fundata.hpp"

namespace bcv {

/// Point or vector of the flat 4-space containing M^2(kappa) x R. The first
/// three coordinates carry the base quadric <x, x> = 1/kappa (Euclidean for
/// kappa > 0, Minkowski with x0 timelike for kappa < 0); the last is height.
using Vec4 = std::array<double, 4>;

enum class Signature { Euclidean4, Minkowski4 };

Signature signature_for(const SpaceParams& params);
/// Ambient inner product of the 4-space.
double ambient_dot(const Vec4& a, const Vec4& b, Signature sig) noexcept;
/// Inner product of the base (first three) components.
double base_dot(const Vec4& a, const Vec4& b, Signature sig) noexcept;

struct SurfaceMesh {
  SpaceParams params{1.0, 0.0};
  Chart chart;
  Signature signature = Signature::Euclidean4;
  std::vector<Vec4> vertices;  // row-major, t outer, s inner

  const Vec4& at(int i, int j) const { return vertices[static_cast<std::size_t>(j) * chart.ns + i]; }
  Vec4& at(int i, int j) { return vertices[static_cast<std::size_t>(j) * chart.ns + i]; }
};

struct HeightField {
  RealField h;
  double closedness_defect = 0.0;  // max |d_t(2 Re A) + d_s(2 Im A)|
};

/// Height function of a surface in a product space from A = h_z:
/// h_s = 2 Re A, h_t = -2 Im A, h = 0 at (s_min, t_min).
/// Throws NumericalError when the closedness defect exceeds tol.fd.
HeightField integrate_height(const FundamentalData& data, const Tolerances& tol = {});

struct ReconstructOptions {
  /// Relative quadric tolerance |kappa <x,x> - 1| after projection; a single
  /// step may drift by at most 10 times this before projection.
  double tol_embed = 1e-8;
  /// Runge-Kutta steps per grid interval.
  int substeps = 1;
  /// Require the residual suite to pass before integrating.
  bool check_residuals = true;
};

struct Reconstruction {
  SurfaceMesh mesh;
  double max_step_drift = 0.0;
  double max_quadric_defect = 0.0;
  /// Far-corner disagreement between (bottom row, last column) and
  /// (first column, top row) integration paths.
  double holonomy_defect = 0.0;
};

/// Integrate the Gauss-Weingarten frame (psi, psi_s, psi_t, eta) of data in a
/// product space along the bottom row, then up every column. The corner
/// frame sits at x = e0 / sqrt|kappa|, h = 0 and is fixed by u and A there.
Reconstruction reconstruct_surface(const FundamentalData& data, const ReconstructOptions& opts = {},
                                   const Tolerances& tol = {});

/// Geometry re-measured from mesh vertices on the chart interior; entry
/// (i, j) belongs to node (i + 1, j + 1).
struct MeasuredData {
  Chart interior;
  RealField lambda;
  RealField H;
  RealField u;
  RealField k1;
  RealField k2;
  RealField conformality;  // max(|E - G| / 2, |F|) / lambda
};

MeasuredData measure_mesh(const SurfaceMesh& mesh);

/// Ambient lengths of all s-edges followed by all t-edges.
std::vector<double> edge_lengths(const SurfaceMesh& mesh);

enum class Projection { PoincareDiskXR, SphereXR_unrolled, Raw4D_csv };
Projection parse_projection(std::string_view name);
/// PreconditionError when the projection does not fit the sign of kappa.
void check_projection(const SpaceParams& params, Projection projection);

void write_obj(std::ostream& out, const SurfaceMesh& mesh, Projection projection);
void write_raw_csv(std::ostream& out, const SurfaceMesh& mesh);
void export_obj(const SurfaceMesh& mesh, const std::filesystem::path& path, Projection projection);

}  // namespace bcv
