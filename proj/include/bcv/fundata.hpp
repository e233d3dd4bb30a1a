#pragma once

#include <filesystem>
#include <string_view>

#include "bcv/grid.hpp"
#include "bcv/spaces.hpp"

namespace bcv {

/// Default thresholds. `alg` judges pointwise algebraic identities; `fd(chart)`
/// judges identities that involve second-order finite differences.
struct Tolerances {
  double alg = 1e-10;
  double fd_scale = 10.0;
  double fd_override = 0.0;  // absolute tol_fd when > 0

  double fd(const Chart& chart) const noexcept {
    return fd_override > 0.0 ? fd_override : fd_scale * chart.h_max() * chart.h_max();
  }
};

/// Fundamental data (lambda |dz|^2, u, H, p dz^2, A dz) sampled on a chart.
struct FundamentalData {
  SpaceParams params{1.0, 0.0};
  Chart chart;
  RealField lambda;  // conformal factor, > 0
  RealField u;       // angle function <eta, xi>, in [-1, 1]
  RealField H;       // mean curvature
  ComplexField p;    // Hopf coefficient
  ComplexField A;    // (1,0)-part of <xi, d psi>

  /// All-zero fields (lambda = 1) on `chart`.
  static FundamentalData zeros(const SpaceParams& params, const Chart& chart);

  /// Shapes, finiteness, lambda > 0 and |u| <= 1 (within `u_slack`).
  void validate(double u_slack = 1e-12) const;
};

enum class CanonicalSurface { Slice, GeodesicCylinder };

CanonicalSurface parse_canonical(std::string_view name);

/// Exact data of two surfaces in M^2(kappa) x R (tau must be 0).
///
/// Slice: the horizontal slice M^2(kappa) x {0}, charted by the stereographic
/// model lambda = (1 + kappa |z|^2 / 4)^-2, whose Gaussian curvature is kappa;
/// u = 1, H = p = A = 0. For kappa < 0 the chart must lie inside
/// |z| < 2 / sqrt(-kappa).
///
/// GeodesicCylinder: a geodesic of M^2(kappa) times R, parametrized by arc
/// length and height: lambda = 1, u = 0, H = p = 0, A = -i/2.
FundamentalData synthesize_canonical(CanonicalSurface which, const SpaceParams& params,
                                     const Chart& chart);

/// Data in the new parameter w = z / a (real a != 0): A -> aA, lambda -> a^2 lambda,
/// p -> a^2 p, chart bounds divided by a. For a < 0 both axes are re-indexed
/// so the new chart is increasing.
FundamentalData rescale_parameter(const FundamentalData& data, double a);

/// Rescale so Im A equals `target`. Requires Im A constant within tol.alg and
/// nonzero. Returns the data and the factor used.
struct PitchNormalized {
  FundamentalData data;
  double scale;
};
PitchNormalized normalize_pitch(const FundamentalData& data, double target = -0.5,
                                const Tolerances& tol = {});

void save(const FundamentalData& data, const std::filesystem::path& path);
FundamentalData load(const std::filesystem::path& path);

std::string to_json_string(const FundamentalData& data);
FundamentalData from_json_string(std::string_view text);

}  // namespace bcv
