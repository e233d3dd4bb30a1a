#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "bcv/errors.hpp"
#include "bcv/fundata.hpp"
#include "bcv/integrability.hpp"
#include "datasets.hpp"

using namespace bcv;
using testdata::data_distance;

namespace {

const Chart kChart{-0.5, 0.5, -0.5, 0.5, 17, 17};

}  // namespace

TEST(Synthesize, SliceHasUnitAngleAndStereographicFactor) {
  const auto d = synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), kChart);
  for (double u : d.u.values()) EXPECT_EQ(u, 1.0);
  for (const auto& a : d.A.values()) EXPECT_EQ(a, cplx(0.0, 0.0));
  // |z|^2 = 0.5 at the corner: lambda = (1 + 1/8)^-2.
  EXPECT_NEAR(d.lambda(0, 0), 1.0 / (1.125 * 1.125), 1e-15);
  EXPECT_NEAR(d.lambda(8, 8), 1.0, 1e-15);
}

TEST(Synthesize, CylinderHasConstantA) {
  const auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), kChart);
  for (const auto& a : d.A.values()) EXPECT_EQ(a, cplx(0.0, -0.5));
  for (double u : d.u.values()) EXPECT_EQ(u, 0.0);
  for (double l : d.lambda.values()) EXPECT_EQ(l, 1.0);
}

TEST(Synthesize, Preconditions) {
  EXPECT_THROW(synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.5 + 1e-3), kChart),
               PreconditionError);
  const Chart wide{-2.0, 2.0, -2.0, 2.0, 9, 9};
  EXPECT_THROW(synthesize_canonical(CanonicalSurface::Slice, SpaceParams(-1.0, 0.0), wide), PreconditionError);
  EXPECT_NO_THROW(synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), wide));
  EXPECT_EQ(parse_canonical("cylinder"), CanonicalSurface::GeodesicCylinder);
  EXPECT_THROW(parse_canonical("torus"), PreconditionError);
}

TEST(FundamentalData, ValidateRejectsBadValues) {
  auto d = FundamentalData::zeros(SpaceParams(1.0, 0.0), kChart);
  EXPECT_NO_THROW(d.validate());
  d.u(3, 3) = 1.5;
  EXPECT_THROW(d.validate(), PreconditionError);
  d.u(3, 3) = 0.0;
  d.lambda(2, 2) = 0.0;
  EXPECT_THROW(d.validate(), PreconditionError);
  d.lambda(2, 2) = std::nan("");
  EXPECT_THROW(d.validate(), PreconditionError);
}

TEST(Serialization, RoundTripIsExact) {
  const auto d = testdata::cmc_nil(17);
  const auto back = from_json_string(to_json_string(d));
  EXPECT_EQ(back.params, d.params);
  EXPECT_EQ(back.chart, d.chart);
  EXPECT_EQ(data_distance(back, d), 0.0);
}

TEST(Serialization, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "bcv_fundata_roundtrip.fdjson";
  const auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), kChart);
  save(d, path);
  EXPECT_EQ(data_distance(load(path), d), 0.0);
  std::filesystem::remove(path);
  EXPECT_THROW(load(path), IoError);
}

TEST(Serialization, MalformedInputs) {
  EXPECT_THROW(from_json_string("{not json"), IoError);
  EXPECT_THROW(from_json_string("{}"), IoError);
  auto doc = to_json_string(FundamentalData::zeros(SpaceParams(1.0, 0.0), kChart));
  const auto pos = doc.find("\"lambda\":[");
  ASSERT_NE(pos, std::string::npos);
  // Drop the first lambda entry: shape mismatch.
  const auto comma = doc.find(',', pos);
  auto short_doc = doc;
  short_doc.erase(pos + 10, comma - (pos + 10) + 1);
  EXPECT_THROW(from_json_string(short_doc), PreconditionError);
}

TEST(Rescale, ScalesFieldsAndChart) {
  const auto d = testdata::cmc_product(17);
  const auto r = rescale_parameter(d, 2.0);
  EXPECT_DOUBLE_EQ(r.chart.s_max, d.chart.s_max / 2.0);
  EXPECT_DOUBLE_EQ(r.lambda(5, 6), 4.0 * d.lambda(5, 6));
  EXPECT_EQ(r.p(5, 6), 4.0 * d.p(5, 6));
  EXPECT_EQ(r.A(5, 6), 2.0 * d.A(5, 6));
  EXPECT_EQ(r.u(5, 6), d.u(5, 6));
}

TEST(Rescale, NegativeFactorReversesAxes) {
  const auto d = testdata::cmc_product(17);
  const auto r = rescale_parameter(d, -1.0);
  EXPECT_DOUBLE_EQ(r.chart.s_min, -d.chart.s_max);
  EXPECT_DOUBLE_EQ(r.chart.s_max, -d.chart.s_min);
  EXPECT_EQ(r.A(0, 0), -d.A(16, 16));
  EXPECT_EQ(r.lambda(0, 0), d.lambda(16, 16));
  EXPECT_EQ(data_distance(rescale_parameter(r, -1.0), d), 0.0);
  EXPECT_THROW(rescale_parameter(d, 0.0), PreconditionError);
}

TEST(Rescale, PreservesStructureEquations) {
  const auto d = testdata::cmc_product(33);
  for (double a : {0.5, 3.0, -2.0}) {
    const auto r = rescale_parameter(d, a);
    EXPECT_TRUE(residuals(r).all_pass()) << "a = " << a;
  }
}

TEST(NormalizePitch, SetsImaginaryPartOfA) {
  const auto d = testdata::minimal_helicoid(17);
  const auto n = normalize_pitch(d, -0.5);
  EXPECT_NEAR(n.scale, 1.0, 1e-12);
  const auto m = normalize_pitch(testdata::cmc_product(17), -0.5);
  for (const auto& a : m.data.A.values()) EXPECT_NEAR(a.imag(), -0.5, 1e-12);
  EXPECT_THROW(
      normalize_pitch(synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), kChart)),
      PreconditionError);
  EXPECT_THROW(normalize_pitch(testdata::cmc_nil(17)), PreconditionError);
}
