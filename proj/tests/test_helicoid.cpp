#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bcv/errors.hpp"
#include "bcv/helicoid.hpp"
#include "bcv/integrability.hpp"
#include "datasets.hpp"

using namespace bcv;

namespace {

const SpaceParams kH2R(-1.0, 0.0);
const cplx kA0(-0.5, -0.5);

ProfileSolution minimal(double span, double step) {
  return integrate_profile(seed_state(0.0, kA0, 0.0, kH2R), MeanCurvatureProfile::constant(0.0), kH2R, span, step);
}

}  // namespace

TEST(Seed, SatisfiesConstraints) {
  const SpaceParams nil(0.0, 0.5);
  const auto st = seed_state(0.2, {0.4, -0.5}, 0.5, nil, 0.1);
  EXPECT_NEAR(4.0 * std::norm(st.A) - st.lambda * (1.0 - st.u * st.u), 0.0, 1e-14);
  const double reality = st.lambda * (cplx(0.5, -0.5) * st.A).imag() + 2.0 * (st.p * std::conj(st.A)).imag();
  EXPECT_NEAR(reality, 0.0, 1e-14);
  const auto hel = seed_state(0.0, kA0, 0.0, kH2R);
  EXPECT_DOUBLE_EQ(hel.lambda, 2.0);
  EXPECT_EQ(hel.p, kA0);
  EXPECT_THROW(seed_state(1.0, kA0, 0.0, kH2R), PreconditionError);
  EXPECT_THROW(seed_state(0.0, {0.0, 0.0}, 0.0, kH2R), PreconditionError);
}

TEST(Profile, MinimalHelicoidOverUnitSpan) {
  const auto sol = minimal(1.0, 1e-3);
  ASSERT_EQ(sol.states.size(), 1001u);
  EXPECT_LE(sol.max_defect(), sol.defect_tol);
  double lo = 0.0, hi = -1.0;
  for (const auto& st : sol.states) {
    lo = std::min(lo, st.A.imag());
    hi = std::max(hi, st.A.imag());
  }
  EXPECT_LE(hi - lo, 1e-10);
  EXPECT_EQ(classify_motion(sol), MotionClass::ProperlyHelicoidal);
}

TEST(Profile, ImaginaryPartOfAConstantInProducts) {
  const auto d = testdata::varying_H_sphere(129);
  double lo = 1.0, hi = -1.0;
  for (const auto& a : d.A.values()) {
    lo = std::min(lo, a.imag());
    hi = std::max(hi, a.imag());
  }
  EXPECT_LE(hi - lo, 1e-10);
}

TEST(Profile, ConstraintDefectConvergesAtFourthOrder) {
  const double e1 = minimal(1.0, 1.0 / 16).max_c4_defect();
  const double e2 = minimal(1.0, 1.0 / 32).max_c4_defect();
  const double e3 = minimal(1.0, 1.0 / 64).max_c4_defect();
  EXPECT_GE(std::log2(e1 / e2), 3.0);
  EXPECT_GE(std::log2(e2 / e3), 3.0);
}

TEST(Profile, StateConvergesUnderStepHalving) {
  // Self-convergence of lambda at s = 1.
  const double a = minimal(1.0, 1.0 / 20).states.back().lambda;
  const double b = minimal(1.0, 1.0 / 40).states.back().lambda;
  const double c = minimal(1.0, 1.0 / 80).states.back().lambda;
  EXPECT_GE(std::abs(a - b) / std::abs(b - c), 12.0);
}

TEST(Profile, LiftPassesResidualSuite) {
  const auto sol = minimal(1.0, 1e-3);
  const auto d = lift_profile(sol, 9, 0.0, 1e-3 * 8);
  const auto report = residuals(d);
  for (const auto& e : report.entries) EXPECT_TRUE(e.pass) << e.name << " " << e.max_abs;
}

TEST(Profile, Preconditions) {
  const auto seed = seed_state(0.0, kA0, 0.0, kH2R);
  const auto H0 = MeanCurvatureProfile::constant(0.0);
  EXPECT_THROW(integrate_profile(seed, H0, kH2R, 1.0, 0.3), PreconditionError);
  EXPECT_THROW(integrate_profile(seed, H0, kH2R, 1.0, -0.1), PreconditionError);
  auto broken = seed;
  broken.lambda *= 1.1;
  EXPECT_THROW(integrate_profile(broken, H0, kH2R, 1.0, 0.1), PreconditionError);
}

TEST(OdeRhs, VanishingARule) {
  ProfileState st;
  st.lambda = 1.0;
  st.u = 1.0;
  st.A = 0.0;
  st.p = 0.0;
  EXPECT_NO_THROW(ode_rhs(st, 0.0, 0.0, kH2R));
  st.p = {0.1, 0.0};
  EXPECT_THROW(ode_rhs(st, 0.0, 0.0, kH2R), PreconditionError);
}

TEST(Motion, Classification) {
  const Chart c{0.0, 1.0, 0.0, 1.0, 9, 9};
  auto d = FundamentalData::zeros(kH2R, c);
  auto fill = [&](cplx a) {
    for (auto& x : d.A.values()) x = a;
    return classify_motion(d);
  };
  EXPECT_EQ(fill({0.0, -0.5}), MotionClass::VerticalCylinder);
  EXPECT_EQ(fill({0.5, 0.0}), MotionClass::Rotational);
  EXPECT_EQ(fill({-0.5, -0.5}), MotionClass::ProperlyHelicoidal);
  EXPECT_THROW(fill({0.0, 0.0}), PreconditionError);
  EXPECT_THROW(classify_motion(testdata::cmc_nil(17)), PreconditionError);
}

TEST(Conformalize, AlreadyIsothermal) {
  const std::vector<double> one(5, 1.0), zero(5, 0.0), v{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto c = conformalize(one, zero, one, v);
  for (std::size_t k = 0; k < v.size(); ++k) {
    EXPECT_NEAR(c.s[k], v[k], 1e-15);
    EXPECT_NEAR(c.shear[k], 0.0, 1e-15);
  }
}

TEST(Conformalize, ConstantShear) {
  const std::vector<double> E(5, 2.0), F(5, 1.0), G(5, 1.0), v{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto c = conformalize(E, F, G, v);
  for (std::size_t k = 0; k < v.size(); ++k) {
    EXPECT_NEAR(c.s[k], v[k], 1e-15);
    EXPECT_NEAR(c.shear[k], v[k], 1e-15);
  }
}

TEST(Conformalize, PullbackOracle) {
  // With t = v2 + shear(v1): E = G (s'^2 + shear'^2) and F = G shear'.
  const int n = 401;
  std::vector<double> E, F, G, v;
  for (int k = 0; k < n; ++k) {
    const double x = 2.0 * k / (n - 1);
    v.push_back(x);
    E.push_back(2.0 + std::sin(x));
    F.push_back(0.5 * std::cos(x));
    G.push_back(1.0 + x * x / 4.0);
  }
  const auto c = conformalize(E, F, G, v);
  const double h = v[1] - v[0];
  for (int k = 1; k + 1 < n; ++k) {
    const double sp = (c.s[k + 1] - c.s[k - 1]) / (2.0 * h);
    const double shp = (c.shear[k + 1] - c.shear[k - 1]) / (2.0 * h);
    EXPECT_NEAR(G[k] * (sp * sp + shp * shp), E[k], 1e-4);
    EXPECT_NEAR(G[k] * shp, F[k], 1e-4);
    EXPECT_EQ(c.conformal_factor[k], G[k]);
  }
}

TEST(Conformalize, RejectsIndefiniteForm) {
  const std::vector<double> E(3, 1.0), F(3, 2.0), G(3, 1.0), v{0.0, 0.5, 1.0};
  EXPECT_THROW(conformalize(E, F, G, v), PreconditionError);
}

TEST(ProfileCsv, Header) {
  std::ostringstream out;
  write_csv(out, minimal(0.1, 0.05));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "s,lambda,u,ReA,ImA,Rep,Imp,c4,im_u,im_lambda");
}
