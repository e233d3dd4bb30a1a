#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bcv/audit.hpp"
#include "bcv/errors.hpp"
#include "datasets.hpp"

using namespace bcv;

namespace {

PairData normalized_product_pair(const FundamentalData& d) {
  const auto n = normalize_pitch(d, -0.5);
  return make_pair(n.data, helicoidal_mate_product(n.data));
}

}  // namespace

TEST(PositivePair, MinimalHelicoidAndMate) {
  const auto report = audit_positive_pair(normalized_product_pair(testdata::minimal_helicoid()));
  for (const auto& e : report.entries) EXPECT_TRUE(e.pass) << e.identity << " " << e.max_abs;
  EXPECT_TRUE(report.has("alpha_holomorphy"));
  EXPECT_TRUE(report.has("f_zbar_identity"));
}

TEST(PositivePair, CmcPairHasConstantF) {
  const auto pair = normalized_product_pair(testdata::cmc_product());
  const auto report = audit_positive_pair(pair);
  ASSERT_TRUE(report.has("F_delta_constancy"));
  ASSERT_TRUE(report.has("estre"));
  EXPECT_TRUE(report.all_pass());
  EXPECT_LE(report.at("F_delta_constancy").max_abs, Tolerances{}.fd(pair.first.chart));
  // f = -Re A by the normalization A = -f - i/2.
  EXPECT_EQ(report.f(3, 4), -pair.first.A(3, 4).real());
}

TEST(PositivePair, NonConstantMeanCurvatureSkipsFChecks) {
  const auto report = audit_positive_pair(normalized_product_pair(testdata::varying_H_sphere()));
  EXPECT_FALSE(report.has("F_delta_constancy"));
  EXPECT_TRUE(report.has_flag("H not constant"));
  EXPECT_TRUE(report.all_pass());
}

TEST(PositivePair, RequiresNormalization) {
  const auto d = testdata::cmc_product(17);
  EXPECT_THROW(audit_positive_pair(make_pair(d, d)), PreconditionError);
  const auto n = testdata::cmc_nil(17);
  EXPECT_THROW(audit_positive_pair(make_pair(n, twin(n))), PreconditionError);
}

TEST(NegativePair, TwinCaseA) {
  // H = tau = 1/2: beta_z = (1 - i) A and f = Im(1 / (1 - i)) = 1/2.
  const auto n = testdata::cmc_nil();
  const auto report = audit_negative_pair(make_pair(n, twin(n)));
  ASSERT_TRUE(report.has("caseA_2fH_tau"));
  EXPECT_LE(report.at("caseA_2fH_tau").max_abs, 1e-10);
  EXPECT_NEAR(report.f(10, 10), 0.5, 1e-12);
  EXPECT_TRUE(report.all_pass());
}

TEST(NegativePair, ScrewMatePairAlignments) {
  for (const auto& d : {testdata::cmc_nil(), testdata::varying_H_berger()}) {
    const auto report = audit_negative_pair(make_pair(d, helicoidal_mate_screw(d)));
    EXPECT_FALSE(report.has("caseA_2fH_tau"));
    EXPECT_TRUE(report.has("f_beta_alignment"));
    EXPECT_TRUE(report.has("H_beta_alignment"));
    for (const auto& e : report.entries) EXPECT_TRUE(e.pass) << e.identity << " " << e.max_abs;
  }
}

TEST(NegativePair, DegenerateBranchIsFlagged) {
  // Same A on both sides with H negated: beta_z = A - A* = 0.
  const auto n = testdata::cmc_nil(17);
  auto m = n;
  for (auto& h : m.H.values()) h = -h;
  const auto report = audit_negative_pair(make_pair(n, m));
  EXPECT_TRUE(report.has_flag("case A=sigma A*"));
  EXPECT_TRUE(report.entries.empty());
}

TEST(NegativePair, Preconditions) {
  const auto d = testdata::cmc_product(17);
  EXPECT_THROW(audit_negative_pair(make_pair(d, helicoidal_mate_product(d))), PreconditionError);
}

TEST(Alignment, FunctionalDependenceOracle) {
  const Chart c{0.0, 1.0, 0.0, 1.0, 33, 33};
  const auto g = sample<double>(c, [](double s, double t) { return s + 2.0 * t; });
  const auto f = sample<double>(c, [](double s, double t) { const double g = s + 2.0 * t;
    return g * g;
  });
  EXPECT_LT(testdata::max_abs(alignment_defect(f, g, c)), 1e-12);
  const auto s = sample<double>(c, [](double s, double) { return s; });
  const auto t = sample<double>(c, [](double, double t) { return t; });
  EXPECT_NEAR(testdata::max_abs(alignment_defect(s, t, c)), 1.0, 1e-12);
}

TEST(IntegrateGradient, RecoversPotential) {
  const Chart c{0.0, 1.0, 0.0, 1.0, 65, 65};
  const auto f = sample<double>(c, [](double s, double t) { return std::exp(s) * std::sin(t) - std::sin(0.0); });
  const auto fs = sample<double>(c, [](double s, double t) { return std::exp(s) * std::sin(t); });
  const auto ft = sample<double>(c, [](double s, double t) { return std::exp(s) * std::cos(t); });
  EXPECT_LT(testdata::max_diff(integrate_gradient(fs, ft, c), f), 1e-4);
}

TEST(AuditCsv, Header) {
  std::ostringstream out;
  write_csv(out, audit_positive_pair(normalized_product_pair(testdata::cmc_product(17))));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "identity,max,rms,tol,pass");
}
