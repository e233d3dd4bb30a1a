#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bcv/fundata.hpp"

namespace bcv {

/// Left-minus-right residual fields of the structure equations:
///   c1 = p_zbar - (lambda/2)(H_z + u A (kappa - 4 tau^2))
///   c2 = A_zbar - (u lambda / 2)(H + i tau)
///   c3 = u_z + (H - i tau) A + (2 p / lambda) conj(A)
///   c4 = 4 |A|^2 / lambda - (1 - u^2)
///   c0 = A_z - (lambda_z / lambda) A - u p
///   gauss = K - det S - tau^2 - (kappa - 4 tau^2) u^2
struct ResidualFields {
  ComplexField c0, c1, c2, c3;
  RealField c4, gauss;
};

struct ResidualEntry {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;  // C0, C1, C2, C3, C4, Gauss
  double tolerance = 0.0;

  bool all_pass() const noexcept;
  const ResidualEntry& at(const std::string& name) const;
  double max_abs(const std::string& name) const { return at(name).max_abs; }
};

struct ResidualOptions {
  /// Nodes excluded from the statistics along every edge (one-sided stencils).
  int margin = 1;
  /// Threshold for every entry; <= 0 selects Tolerances::fd(chart).
  double tolerance = 0.0;
  /// Derivative stencils. Fourth order keeps truncation error of steep but
  /// exact data (large third derivatives) well below tol_fd = 10 h^2.
  Stencil stencil = Stencil::Fourth;
};

ResidualFields residual_fields(const FundamentalData& data, Stencil st = Stencil::Fourth);
ResidualReport residuals(const FundamentalData& data, const ResidualOptions& opts = {},
                         const Tolerances& tol = {});

/// K = -(2 / lambda) d_z d_zbar log lambda, the curvature of lambda |dz|^2.
RealField gaussian_curvature(const FundamentalData& data, Stencil st = Stencil::Fourth);
RealField gauss_residual(const FundamentalData& data, Stencil st = Stencil::Fourth);
/// H^2 - 4 |p|^2 / lambda^2
RealField shape_det(const FundamentalData& data);

struct PrincipalCurvatures {
  RealField k1;  // H + 2|p|/lambda
  RealField k2;  // H - 2|p|/lambda
};
PrincipalCurvatures principal_curvatures(const FundamentalData& data);

/// Max |.| and rms over nodes at least `margin` away from every edge.
template <class T>
std::pair<double, double> interior_stats(const Grid<T>& f, int margin);

/// CSV with header `equation,max_abs,rms,tolerance,pass`.
void write_csv(std::ostream& out, const ResidualReport& report);

}  // namespace bcv
