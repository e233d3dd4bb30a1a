#include "bcv/helicoid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "bcv/errors.hpp"
#include "bcv/mates.hpp"

namespace bcv {

ProfileDerivative ode_rhs(const ProfileState& st, double H, double H_slope, const SpaceParams& params,
                          double zero_tol) {
  if (!(st.lambda > 0.0)) throw PreconditionError("profile state needs lambda > 0");
  const cplx mean(H, params.tau());  // H + i tau
  ProfileDerivative d;
  d.dA = st.u * st.lambda * mean;
  d.dp = st.lambda * (0.5 * H_slope + st.u * st.A * params.curvature_gap());

  const cplx u_bracket = -2.0 * std::conj(mean) * st.A - 4.0 * st.p * std::conj(st.A) / st.lambda;
  d.du = u_bracket.real();
  d.im_u = u_bracket.imag();

  const cplx numerator = st.lambda * (st.u * st.lambda * mean - 2.0 * st.u * st.p);
  if (std::abs(st.A) <= zero_tol) {
    if (std::abs(numerator) > zero_tol) {
      throw PreconditionError("A = 0 with nonzero u p: lambda' is undefined");
    }
    d.dlambda = 0.0;
    d.im_lambda = 0.0;
  } else {
    const cplx l_bracket = numerator / st.A;
    d.dlambda = l_bracket.real();
    d.im_lambda = l_bracket.imag();
  }
  return d;
}

MeanCurvatureProfile MeanCurvatureProfile::constant(double H) {
  return {[H](double) { return H; }, [](double) { return 0.0; }};
}

MeanCurvatureProfile MeanCurvatureProfile::linear(double H0, double dH) {
  return {[H0, dH](double s) { return H0 + dH * s; }, [dH](double) { return dH; }};
}

ProfileState seed_state(double u0, cplx A0, double H0, const SpaceParams& params, double p_coef, double s0) {
  if (!(std::abs(u0) < 1.0)) throw PreconditionError("seed needs |u0| < 1");
  const double a2 = std::norm(A0);
  if (!(a2 > 0.0)) throw PreconditionError("seed needs A0 != 0");
  const double lambda0 = 4.0 * a2 / (1.0 - u0 * u0);
  const double d = -0.5 * lambda0 * (cplx(H0, -params.tau()) * A0).imag();
  return {s0, lambda0, u0, A0, cplx(p_coef, d / a2) * A0};
}

double ProfileDefects::max() const noexcept {
  return std::max({std::abs(c4), std::abs(im_u), std::abs(im_lambda)});
}

double ProfileSolution::max_defect() const noexcept {
  double mx = 0.0;
  for (const auto& d : defects) mx = std::max(mx, d.max());
  return mx;
}

double ProfileSolution::max_c4_defect() const noexcept {
  double mx = 0.0;
  for (const auto& d : defects) mx = std::max(mx, std::abs(d.c4));
  return mx;
}

namespace {

struct Vec {
  double lambda, u;
  cplx A, p;
};

Vec axpy(const ProfileState& y, double h, const ProfileDerivative& k) {
  return {y.lambda + h * k.dlambda, y.u + h * k.du, y.A + h * k.dA, y.p + h * k.dp};
}

ProfileDefects defects_at(const ProfileState& st, const MeanCurvatureProfile& H, const SpaceParams& params) {
  const ProfileDerivative d = ode_rhs(st, H.value(st.s), H.slope(st.s), params);
  return {4.0 * std::norm(st.A) - st.lambda * (1.0 - st.u * st.u), d.im_u, d.im_lambda};
}

}  // namespace

ProfileSolution integrate_profile(const ProfileState& initial, const MeanCurvatureProfile& H,
                                  const SpaceParams& params, double span, double step, const Tolerances& tol) {
  if (!(step > 0.0) || !(span > 0.0)) throw PreconditionError("span and step must be positive");
  const double steps_real = span / step;
  const long n = std::lround(steps_real);
  if (n < 1 || std::abs(steps_real - static_cast<double>(n)) > 1e-9 * steps_real) {
    throw PreconditionError("span must be an integer multiple of step");
  }
  if (!H.value || !H.slope) throw PreconditionError("mean curvature profile is empty");

  const ProfileDefects d0 = defects_at(initial, H, params);
  if (d0.max() > tol.alg) {
    std::ostringstream msg;
    msg << "initial state violates the constraints (C.4 defect " << d0.c4 << ", Im u' " << d0.im_u
        << ", Im lambda' " << d0.im_lambda << ")";
    throw PreconditionError(msg.str());
  }

  ProfileSolution sol;
  sol.params = params;
  sol.H = H;
  sol.step = step;
  sol.defect_tol = 100.0 * std::pow(step, 4) * span;
  sol.states.reserve(static_cast<std::size_t>(n) + 1);
  sol.defects.reserve(static_cast<std::size_t>(n) + 1);
  sol.states.push_back(initial);
  sol.defects.push_back(d0);

  auto rhs = [&](double s, const Vec& v) {
    return ode_rhs({s, v.lambda, v.u, v.A, v.p}, H.value(s), H.slope(s), params);
  };

  ProfileState y = initial;
  for (long k = 0; k < n; ++k) {
    const double s = initial.s + static_cast<double>(k) * step;
    const ProfileDerivative k1 = rhs(s, {y.lambda, y.u, y.A, y.p});
    const ProfileDerivative k2 = rhs(s + 0.5 * step, axpy(y, 0.5 * step, k1));
    const ProfileDerivative k3 = rhs(s + 0.5 * step, axpy(y, 0.5 * step, k2));
    const ProfileDerivative k4 = rhs(s + step, axpy(y, step, k3));
    const double w = step / 6.0;
    y.lambda += w * (k1.dlambda + 2.0 * k2.dlambda + 2.0 * k3.dlambda + k4.dlambda);
    y.u += w * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du);
    y.A += w * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA);
    y.p += w * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    y.s = initial.s + static_cast<double>(k + 1) * step;

    if (!(y.lambda > 0.0) || !(std::abs(y.u) <= 1.0)) {
      std::ostringstream msg;
      msg << "profile left the admissible region at s = " << y.s << " (lambda " << y.lambda << ", u " << y.u << ")";
      throw NumericalError(msg.str());
    }
    const ProfileDefects dk = defects_at(y, H, params);
    if (dk.max() > sol.defect_tol) {
      std::ostringstream msg;
      msg << "constraint defect " << dk.max() << " exceeds " << sol.defect_tol << " at s = " << y.s;
      throw NumericalError(msg.str());
    }
    sol.states.push_back(y);
    sol.defects.push_back(dk);
  }
  return sol;
}

FundamentalData lift_profile(const ProfileSolution& sol, int nt, double t_min, double t_max) {
  if (sol.states.size() < 2) throw PreconditionError("profile solution is empty");
  const Chart chart{sol.states.front().s, sol.states.back().s, t_min, t_max,
                    static_cast<int>(sol.states.size()), nt};
  auto data = FundamentalData::zeros(sol.params, chart);
  for (int i = 0; i < chart.ns; ++i) {
    const ProfileState& st = sol.states[static_cast<std::size_t>(i)];
    const double H = sol.H.value(st.s);
    for (int j = 0; j < chart.nt; ++j) {
      data.lambda(i, j) = st.lambda;
      data.u(i, j) = st.u;
      data.H(i, j) = H;
      data.p(i, j) = st.p;
      data.A(i, j) = st.A;
    }
  }
  return data;
}

Conformalization conformalize(const std::vector<double>& E, const std::vector<double>& F,
                              const std::vector<double>& G, const std::vector<double>& v1) {
  const std::size_t n = v1.size();
  if (n < 2 || E.size() != n || F.size() != n || G.size() != n) {
    throw PreconditionError("conformalize needs matching samples of E, F, G on at least two abscissae");
  }
  std::vector<double> ds(n);
  std::vector<double> dshear(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double det = E[k] * G[k] - F[k] * F[k];
    if (!(E[k] > 0.0) || !(G[k] > 0.0) || !(det > 0.0)) {
      throw PreconditionError("first fundamental form is not positive definite");
    }
    if (k > 0 && !(v1[k] > v1[k - 1])) throw PreconditionError("v1 samples must be strictly increasing");
    ds[k] = std::sqrt(det) / G[k];
    dshear[k] = F[k] / G[k];
  }
  Conformalization out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), G};
  for (std::size_t k = 1; k < n; ++k) {
    const double h = v1[k] - v1[k - 1];
    out.s[k] = out.s[k - 1] + 0.5 * h * (ds[k] + ds[k - 1]);
    out.shear[k] = out.shear[k - 1] + 0.5 * h * (dshear[k] + dshear[k - 1]);
  }
  return out;
}

std::string_view to_string(MotionClass m) {
  switch (m) {
    case MotionClass::Rotational: return "Rotational";
    case MotionClass::VerticalCylinder: return "VerticalCylinder";
    case MotionClass::ProperlyHelicoidal: return "ProperlyHelicoidal";
  }
  return "unknown";
}

namespace {

MotionClass classify_from_A(const std::vector<cplx>& values, double tol) {
  double max_re = 0.0;
  double max_im = 0.0;
  for (const auto& a : values) {
    max_re = std::max(max_re, std::abs(a.real()));
    max_im = std::max(max_im, std::abs(a.imag()));
  }
  if (max_re <= tol && max_im <= tol) throw PreconditionError("ambiguous motion: A vanishes on the whole chart");
  if (max_im <= tol) return MotionClass::Rotational;
  if (max_re <= tol) return MotionClass::VerticalCylinder;
  return MotionClass::ProperlyHelicoidal;
}

}  // namespace

MotionClass classify_motion(const FundamentalData& data, double tol) {
  if (!data.params.is_product()) {
    throw PreconditionError("motion classification through A is defined for product spaces (tau = 0)");
  }
  if (!depends_only_on_s(data)) throw PreconditionError("motion classification requires data depending on s only");
  return classify_from_A(data.A.values(), tol);
}

MotionClass classify_motion(const ProfileSolution& sol, double tol) {
  if (!sol.params.is_product()) {
    throw PreconditionError("motion classification through A is defined for product spaces (tau = 0)");
  }
  std::vector<cplx> values;
  values.reserve(sol.states.size());
  for (const auto& st : sol.states) values.push_back(st.A);
  return classify_from_A(values, tol);
}

void write_csv(std::ostream& out, const ProfileSolution& sol) {
  const auto old_precision = out.precision(17);
  out << "s,lambda,u,ReA,ImA,Rep,Imp,c4,im_u,im_lambda\n";
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    const auto& st = sol.states[k];
    const auto& d = sol.defects[k];
    out << st.s << ',' << st.lambda << ',' << st.u << ',' << st.A.real() << ',' << st.A.imag() << ','
        << st.p.real() << ',' << st.p.imag() << ',' << d.c4 << ',' << d.im_u << ',' << d.im_lambda << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bcv
