#include "bcv/spaces.hpp"

#include <cmath>
#include <sstream>

#include "bcv/errors.hpp"

namespace bcv {

SpaceParams::SpaceParams(double kappa, double tau) : kappa_(kappa), tau_(tau) {
  if (!std::isfinite(kappa) || !std::isfinite(tau)) {
    throw PreconditionError("space parameters must be finite");
  }
  if (kappa - 4.0 * tau * tau == 0.0) {
    std::ostringstream msg;
    msg << "kappa - 4 tau^2 must be nonzero (kappa=" << kappa << ", tau=" << tau << ")";
    throw PreconditionError(msg.str());
  }
}

SpaceClass classify_space(const SpaceParams& params) {
  if (params.tau() == 0.0) {
    // kappa == 0 with tau == 0 is rejected by the constructor.
    return params.kappa() > 0.0 ? SpaceClass::ProductS2xR : SpaceClass::ProductH2xR;
  }
  if (params.kappa() == 0.0) return SpaceClass::Nil3;
  return params.kappa() > 0.0 ? SpaceClass::BergerSphere : SpaceClass::PslCover;
}

std::string_view to_string(SpaceClass c) {
  switch (c) {
    case SpaceClass::ProductS2xR: return "S2xR";
    case SpaceClass::ProductH2xR: return "H2xR";
    case SpaceClass::Nil3: return "Nil3";
    case SpaceClass::BergerSphere: return "Berger";
    case SpaceClass::PslCover: return "PSL2R";
  }
  return "unknown";
}

std::vector<double> sister_mean_curvatures(const SpaceParams& source, const SpaceParams& target,
                                           double H1, double tol) {
  if (std::abs(source.curvature_gap() - target.curvature_gap()) > tol) return {};
  const double radicand = H1 * H1 + source.tau() * source.tau() - target.tau() * target.tau();
  if (radicand < -tol) return {};
  if (radicand <= tol) return {0.0};
  const double root = std::sqrt(radicand);
  return {root, -root};
}

}  // namespace bcv
