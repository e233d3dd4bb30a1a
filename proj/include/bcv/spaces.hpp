#pragma once

#include <string_view>
#include <vector>

namespace bcv {

/// The pair (kappa, tau) of a homogeneous space E(kappa, tau).
/// Construction rejects kappa - 4 tau^2 == 0.
class SpaceParams {
 public:
  SpaceParams(double kappa, double tau);

  double kappa() const noexcept { return kappa_; }
  double tau() const noexcept { return tau_; }
  /// kappa - 4 tau^2, the coefficient that appears in the Codazzi equation.
  double curvature_gap() const noexcept { return kappa_ - 4.0 * tau_ * tau_; }
  bool is_product() const noexcept { return tau_ == 0.0; }

  friend bool operator==(const SpaceParams&, const SpaceParams&) = default;

 private:
  double kappa_;
  double tau_;
};

enum class SpaceClass { ProductS2xR, ProductH2xR, Nil3, BergerSphere, PslCover };

SpaceClass classify_space(const SpaceParams& params);
std::string_view to_string(SpaceClass c);

/// Mean curvatures H2 admissible for a sister surface in `target` of a CMC-H1
/// surface in `source`: the real roots of H2^2 = H1^2 + tau1^2 - tau2^2, provided
/// both spaces share kappa - 4 tau^2. Empty when no sister exists. Sorted
/// descending; a double root is returned once.
std::vector<double> sister_mean_curvatures(const SpaceParams& source, const SpaceParams& target,
                                           double H1, double tol = 1e-12);

}  // namespace bcv
