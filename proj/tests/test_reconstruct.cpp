#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "bcv/errors.hpp"
#include "bcv/integrability.hpp"
#include "bcv/mates.hpp"
#include "bcv/reconstruct.hpp"
#include "datasets.hpp"

using namespace bcv;

namespace {

Chart square(int n) { return Chart{-0.5, 0.5, -0.5, 0.5, n, n}; }

// RK4 on h = 1/8 needs substeps to stay under the per-step drift limit.
const ReconstructOptions kCoarse{1e-8, 8, true};

struct RoundTrip {
  double lambda = 0.0, H = 0.0, u = 0.0, k1 = 0.0, k2 = 0.0, conformality = 0.0;
};

RoundTrip round_trip(const FundamentalData& d) {
  const auto m = measure_mesh(reconstruct_surface(d).mesh);
  const auto pc = principal_curvatures(d);
  RoundTrip scale, err;
  for (int j = 1; j + 1 < d.chart.nt; ++j) {
    for (int i = 1; i + 1 < d.chart.ns; ++i) {
      const int a = i - 1, b = j - 1;
      scale.lambda = std::max(scale.lambda, std::abs(d.lambda(i, j)));
      scale.H = std::max(scale.H, std::abs(d.H(i, j)));
      scale.k1 = std::max(scale.k1, std::abs(pc.k1(i, j)));
      scale.k2 = std::max(scale.k2, std::abs(pc.k2(i, j)));
      err.lambda = std::max(err.lambda, std::abs(m.lambda(a, b) - d.lambda(i, j)));
      err.H = std::max(err.H, std::abs(m.H(a, b) - d.H(i, j)));
      err.u = std::max(err.u, std::abs(m.u(a, b) - d.u(i, j)));
      err.k1 = std::max(err.k1, std::abs(m.k1(a, b) - pc.k1(i, j)));
      err.k2 = std::max(err.k2, std::abs(m.k2(a, b) - pc.k2(i, j)));
      err.conformality = std::max(err.conformality, m.conformality(a, b));
    }
  }
  err.lambda /= std::max(scale.lambda, 1.0);
  err.H /= std::max(scale.H, 1.0);
  err.k1 /= std::max(scale.k1, 1.0);
  err.k2 /= std::max(scale.k2, 1.0);
  return err;
}

// Ratio test that tolerates errors already at roundoff on the fine grid.
void expect_second_order(double coarse, double fine, const char* what) {
  if (fine <= 1e-9) return;
  EXPECT_GE(coarse / fine, 3.5) << what << ": " << coarse << " -> " << fine;
}

}  // namespace

TEST(Reconstruct, SliceLiesOnUnitSphereAtHeightZero) {
  const auto d = synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), square(33));
  const auto r = reconstruct_surface(d);
  for (const auto& v : r.mesh.vertices) {
    EXPECT_NEAR(v[3], 0.0, 1e-12);
    EXPECT_NEAR(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], 1.0, 1e-8);
  }
  EXPECT_LE(r.max_quadric_defect, 1e-8);
  EXPECT_LE(r.max_step_drift, 1e-7);
}

TEST(Reconstruct, CylinderFollowsHyperbolicGeodesic) {
  const Chart c{0.0, 1.0, 0.0, 1.0, 33, 33};
  const auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), c);
  const auto r = reconstruct_surface(d);
  const double tol = Tolerances{}.fd(c);
  for (int j = 0; j < c.nt; ++j) {
    for (int i = 0; i < c.ns; ++i) {
      const auto& v = r.mesh.at(i, j);
      EXPECT_NEAR(v[0], std::cosh(c.s(i)), tol);
      EXPECT_NEAR(v[1], std::sinh(c.s(i)), tol);
      EXPECT_NEAR(v[2], 0.0, tol);
      EXPECT_NEAR(v[3], c.t(j), tol);
    }
  }
}

TEST(Reconstruct, RoundTripConvergesAtSecondOrder) {
  const std::vector<std::pair<const char*, std::function<FundamentalData(int)>>> cases{
      {"slice+", [](int n) { return synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), square(n)); }},
      {"slice-", [](int n) { return synthesize_canonical(CanonicalSurface::Slice, SpaceParams(-1.0, 0.0), square(n)); }},
      {"cylinder",
       [](int n) {
         return synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), square(n));
       }},
      {"helicoid", [](int n) { return testdata::minimal_helicoid(n); }},
      {"sphere", [](int n) { return testdata::varying_H_sphere(n); }},
  };
  for (const auto& [name, make] : cases) {
    const auto a = round_trip(make(65));
    const auto b = round_trip(make(129));
    SCOPED_TRACE(name);
    expect_second_order(a.lambda, b.lambda, "lambda");
    expect_second_order(a.H, b.H, "H");
    expect_second_order(a.u, b.u, "u");
    expect_second_order(a.k1, b.k1, "k1");
    expect_second_order(a.k2, b.k2, "k2");
    expect_second_order(a.conformality, b.conformality, "conformality");
  }
}

TEST(Reconstruct, HolonomyDefectIsSecondOrderSmall) {
  for (int n : {33, 65}) {
    const auto d = testdata::cmc_product(n);
    const auto r = reconstruct_surface(d);
    EXPECT_LE(r.holonomy_defect, Tolerances{}.fd(d.chart)) << n;
  }
}

TEST(Reconstruct, ProductMatesAreIsometricWithReflectedHeights) {
  const auto d = testdata::cmc_product(65);
  const auto m = helicoidal_mate_product(d);
  const auto la = edge_lengths(reconstruct_surface(d).mesh);
  const auto lb = edge_lengths(reconstruct_surface(m).mesh);
  ASSERT_EQ(la.size(), lb.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < la.size(); ++k) worst = std::max(worst, std::abs(la[k] - lb[k]) / la[k]);
  EXPECT_LE(worst, Tolerances{}.fd(d.chart));

  // h*(s, t) = h(s, -t) + const on a chart symmetric in t.
  auto shifted = d;
  shifted.chart.t_min = -0.25;
  shifted.chart.t_max = 0.25;
  const auto h = integrate_height(shifted).h;
  const auto hm = integrate_height(helicoidal_mate_product(shifted)).h;
  const int nt = shifted.chart.nt;
  const double c0 = hm(0, 0) - h(0, nt - 1);
  double diff = 0.0, spread = 0.0;
  for (int j = 0; j < nt; ++j) {
    for (int i = 0; i < shifted.chart.ns; ++i) {
      diff = std::max(diff, std::abs(hm(i, j) - h(i, nt - 1 - j) - c0));
      spread = std::max(spread, std::abs(hm(i, j) - h(i, j) - (hm(0, 0) - h(0, 0))));
    }
  }
  EXPECT_LE(diff, Tolerances{}.fd(shifted.chart));
  EXPECT_GT(spread, 0.1);
}

TEST(Reconstruct, Preconditions) {
  EXPECT_THROW(reconstruct_surface(testdata::cmc_nil(17)), PreconditionError);
  auto bad = testdata::cmc_product(33);
  for (int j = 10; j < 20; ++j)
    for (int i = 10; i < 20; ++i) bad.u(i, j) += 0.01;
  EXPECT_THROW(reconstruct_surface(bad), PreconditionError);
  EXPECT_THROW(reconstruct_surface(testdata::cmc_product(17), {1e-8, 0, true}), PreconditionError);
}

TEST(Reconstruct, SubstepsAgree) {
  const auto d = testdata::minimal_helicoid(33);
  const auto a = reconstruct_surface(d, {1e-8, 1, true});
  const auto b = reconstruct_surface(d, {1e-8, 4, true});
  double worst = 0.0;
  for (std::size_t k = 0; k < a.mesh.vertices.size(); ++k) {
    for (int q = 0; q < 4; ++q) worst = std::max(worst, std::abs(a.mesh.vertices[k][q] - b.mesh.vertices[k][q]));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Height, MatchesHeightComponentOfMesh) {
  const auto d = testdata::varying_H_sphere(33);
  const auto h = integrate_height(d);
  EXPECT_LE(h.closedness_defect, Tolerances{}.fd(d.chart));
  const auto r = reconstruct_surface(d);
  for (int j = 0; j < d.chart.nt; ++j)
    for (int i = 0; i < d.chart.ns; ++i) EXPECT_NEAR(h.h(i, j), r.mesh.at(i, j)[3], Tolerances{}.fd(d.chart));
  EXPECT_THROW(integrate_height(testdata::cmc_nil(17)), PreconditionError);
}

TEST(Height, RejectsNonClosedForm) {
  auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), square(33));
  for (int j = 0; j < 33; ++j)
    for (int i = 0; i < 33; ++i) d.A(i, j) = cplx(d.chart.t(j), -0.5);
  EXPECT_THROW(integrate_height(d), NumericalError);
}

TEST(Measure, RejectsDegenerateMesh) {
  const auto d = synthesize_canonical(CanonicalSurface::Slice, SpaceParams(1.0, 0.0), square(9));
  auto mesh = reconstruct_surface(d, kCoarse).mesh;
  for (auto& v : mesh.vertices) v = {1.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(measure_mesh(mesh), NumericalError);
  mesh.vertices.pop_back();
  EXPECT_THROW(measure_mesh(mesh), PreconditionError);
}

TEST(Export, ObjAndCsvLayout) {
  const auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), square(9));
  const auto mesh = reconstruct_surface(d, kCoarse).mesh;
  std::ostringstream obj;
  write_obj(obj, mesh, Projection::PoincareDiskXR);
  int v = 0, f = 0;
  std::istringstream in(obj.str());
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 81);
  EXPECT_EQ(f, 2 * 8 * 8);
  EXPECT_NE(obj.str().find("f 1 2 11"), std::string::npos);

  std::ostringstream csv;
  write_obj(csv, mesh, Projection::Raw4D_csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "x0,x1,x2,h");
  EXPECT_THROW(write_obj(csv, mesh, Projection::SphereXR_unrolled), PreconditionError);
  EXPECT_EQ(parse_projection("SphereXR_unrolled"), Projection::SphereXR_unrolled);
  EXPECT_THROW(parse_projection("Mercator"), PreconditionError);
}

TEST(Export, PoincareDiskImageOfCylinderIsADiameter) {
  const auto d = synthesize_canonical(CanonicalSurface::GeodesicCylinder, SpaceParams(-1.0, 0.0), square(9));
  const auto mesh = reconstruct_surface(d, kCoarse).mesh;
  const auto path = std::filesystem::temp_directory_path() / "bcv_cylinder.obj";
  export_obj(mesh, path, Projection::PoincareDiskXR);
  std::ifstream in(path);
  std::string tag;
  double x, y, h;
  int count = 0;
  while (in >> tag && tag == "v" && in >> x >> y >> h) {
    EXPECT_NEAR(y, 0.0, 1e-6);
    EXPECT_LT(std::abs(x), 1.0);
    ++count;
  }
  EXPECT_EQ(count, 81);
  std::filesystem::remove(path);
  EXPECT_THROW(export_obj(mesh, "/nonexistent-dir/x.obj", Projection::PoincareDiskXR), IoError);
}
