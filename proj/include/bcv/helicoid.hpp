#pragma once

#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "bcv/fundata.hpp"

namespace bcv {

/// State of the s-only reduction at one abscissa.
struct ProfileState {
  double s = 0.0;
  double lambda = 1.0;
  double u = 0.0;
  cplx A;
  cplx p;
};

/// d/ds of the state plus the imaginary parts discarded from the real
/// equations for u and lambda (both vanish on genuine surface data).
struct ProfileDerivative {
  double dlambda = 0.0;
  double du = 0.0;
  cplx dA;
  cplx dp;
  double im_u = 0.0;
  double im_lambda = 0.0;
};

/// Right-hand side of the structure equations specialized to data depending
/// on s only (d_z = d_zbar = d/ds / 2):
///   A' = u lambda (H + i tau)
///   p' = lambda (H'/2 + u A (kappa - 4 tau^2))
///   u' = Re[-2 (H - i tau) A - 4 p conj(A) / lambda]
///   lambda' = Re[lambda (u lambda (H + i tau) - 2 u p) / A]
/// At |A| <= zero_tol the lambda equation is taken as 0 when its numerator
/// vanishes too, otherwise PreconditionError.
ProfileDerivative ode_rhs(const ProfileState& state, double H, double H_slope, const SpaceParams& params,
                          double zero_tol = 1e-12);

/// Prescribed mean curvature H(s) and its derivative.
struct MeanCurvatureProfile {
  std::function<double(double)> value;
  std::function<double(double)> slope;

  static MeanCurvatureProfile constant(double H);
  static MeanCurvatureProfile linear(double H0, double dH);
};

/// Consistent initial state from (u0, A0, H0): lambda0 from C.4 and
/// p0 = (p_coef + i d / |A0|^2) A0 with d fixed by the reality constraint
/// lambda Im((H - i tau) A) + 2 Im(p conj A) = 0. Requires |u0| < 1, A0 != 0.
ProfileState seed_state(double u0, cplx A0, double H0, const SpaceParams& params, double p_coef = 1.0,
                        double s0 = 0.0);

struct ProfileDefects {
  double c4 = 0.0;  // 4|A|^2 - lambda (1 - u^2)
  double im_u = 0.0;
  double im_lambda = 0.0;

  double max() const noexcept;
};

struct ProfileSolution {
  SpaceParams params{1.0, 0.0};
  MeanCurvatureProfile H;
  double step = 0.0;
  double defect_tol = 0.0;
  std::vector<ProfileState> states;
  std::vector<ProfileDefects> defects;

  double max_defect() const noexcept;
  double max_c4_defect() const noexcept;
};

/// Classical fourth-order Runge-Kutta with fixed step over [s0, s0 + span].
/// The span must be an integer multiple of the step (within 1e-9 relative).
/// Throws PreconditionError if the initial state violates C.4 or either
/// reality constraint by more than tol.alg, NumericalError if a defect exceeds
/// 100 step^4 span or the state leaves lambda > 0, |u| <= 1.
ProfileSolution integrate_profile(const ProfileState& initial, const MeanCurvatureProfile& H,
                                  const SpaceParams& params, double span, double step,
                                  const Tolerances& tol = {});

/// Broadcast the profile along t on [t_min, t_max] with nt nodes.
FundamentalData lift_profile(const ProfileSolution& sol, int nt, double t_min, double t_max);

/// Isothermal reparametrization of an invariant parametrization with first
/// fundamental form E dv1^2 + 2F dv1 dv2 + G dv2^2 (functions of v1):
/// s = int sqrt(EG - F^2)/G dv1, t = v2 + shear(v1), shear = int F/G dv1.
struct Conformalization {
  std::vector<double> s;
  std::vector<double> shear;
  std::vector<double> conformal_factor;  // G, so I = G (ds^2 + dt^2)
};
Conformalization conformalize(const std::vector<double>& E, const std::vector<double>& F,
                              const std::vector<double>& G, const std::vector<double>& v1);

enum class MotionClass { Rotational, VerticalCylinder, ProperlyHelicoidal };
std::string_view to_string(MotionClass m);

/// Kind of one-parameter group generating product-space helicoidal data:
/// A real -> rotations, A imaginary -> vertical translations, otherwise a
/// proper screw motion. Requires tau = 0 and s-only data.
MotionClass classify_motion(const FundamentalData& data, double tol = 1e-10);
MotionClass classify_motion(const ProfileSolution& sol, double tol = 1e-10);

/// CSV: s,lambda,u,ReA,ImA,Rep,Imp,c4,im_u,im_lambda
void write_csv(std::ostream& out, const ProfileSolution& sol);

}  // namespace bcv
