#include "bcv/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcv/errors.hpp"
#include "bcv/integrability.hpp"

namespace bcv {

namespace {

using Frame = std::array<Vec4, 4>;  // position, psi_s, psi_t, eta

Vec4 operator+(const Vec4& a, const Vec4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
Vec4 operator-(const Vec4& a, const Vec4& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]}; }
Vec4 operator*(double c, const Vec4& a) { return {c * a[0], c * a[1], c * a[2], c * a[3]}; }

Frame axpy(const Frame& x, double c, const Frame& d) {
  Frame out;
  for (int k = 0; k < 4; ++k) out[k] = x[k] + c * d[k];
  return out;
}

Vec4 base(const Vec4& a) { return {a[0], a[1], a[2], 0.0}; }

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  double out = 0.0;
  for (int k = 0; k < 4; ++k) {
    int cols[3];
    for (int m = 0, n = 0; m < 4; ++m)
      if (m != k) cols[n++] = m;
    const double minor = det3(b[cols[0]], b[cols[1]], b[cols[2]], c[cols[0]], c[cols[1]], c[cols[2]], d[cols[0]],
                              d[cols[1]], d[cols[2]]);
    out += ((k % 2 == 0) ? 1.0 : -1.0) * a[k] * minor;
  }
  return out;
}

/// Coordinate vector orthogonal (Euclidean dot) to a, b, c.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 out{};
  for (int k = 0; k < 4; ++k) {
    Vec4 e{};
    e[k] = 1.0;
    out[k] = det4(e, a, b, c);
  }
  return out;
}

struct Coeff {
  double lam, ls, lt, b11, b12, b22;
};

Coeff lerp_cubic(const std::vector<Coeff>& line, double x) {
  const int n = static_cast<int>(line.size());
  const int k = std::clamp(static_cast<int>(std::floor(x)), 0, n - 2);
  const int m = std::clamp(k - 1, 0, n - 4);
  double w[4];
  for (int a = 0; a < 4; ++a) {
    w[a] = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w[a] *= (x - (m + b)) / static_cast<double>(a - b);
  }
  Coeff out{0, 0, 0, 0, 0, 0};
  for (int a = 0; a < 4; ++a) {
    const Coeff& c = line[static_cast<std::size_t>(m + a)];
    out.lam += w[a] * c.lam;
    out.ls += w[a] * c.ls;
    out.lt += w[a] * c.lt;
    out.b11 += w[a] * c.b11;
    out.b12 += w[a] * c.b12;
    out.b22 += w[a] * c.b22;
  }
  return out;
}

struct System {
  double kappa;
  Signature sig;

  // Derivative of the frame along s (along_s) or t.
  Frame rhs(const Frame& f, const Coeff& c, bool along_s) const {
    const Vec4& x = f[0];
    const Vec4& ps = f[1];
    const Vec4& pt = f[2];
    const Vec4& n = f[3];
    const Vec4 N = base(x);
    const double g = 0.5 / c.lam;
    // Christoffel symbols of lambda (ds^2 + dt^2).
    const double G_s_ss = c.ls * g, G_t_ss = -c.lt * g;
    const double G_s_st = c.lt * g, G_t_st = c.ls * g;
    const double G_s_tt = -c.ls * g, G_t_tt = c.lt * g;
    auto quad = [&](const Vec4& a, const Vec4& b) { return -kappa * base_dot(a, b, sig) * N; };
    const Vec4 d_st = G_s_st * ps + G_t_st * pt + c.b12 * n + quad(ps, pt);
    Frame out;
    if (along_s) {
      out[0] = ps;
      out[1] = G_s_ss * ps + G_t_ss * pt + c.b11 * n + quad(ps, ps);
      out[2] = d_st;
      out[3] = (-c.b11 / c.lam) * ps + (-c.b12 / c.lam) * pt + quad(ps, n);
    } else {
      out[0] = pt;
      out[1] = d_st;
      out[2] = G_s_tt * ps + G_t_tt * pt + c.b22 * n + quad(pt, pt);
      out[3] = (-c.b12 / c.lam) * ps + (-c.b22 / c.lam) * pt + quad(pt, n);
    }
    return out;
  }
};

struct Integrator {
  System sys;
  int substeps;
  double tol_embed;
  double max_drift = 0.0;
  double max_defect = 0.0;

  double quadric_defect(const Vec4& x) const { return std::abs(sys.kappa * base_dot(x, x, sys.sig) - 1.0); }

  void project(Frame& f) {
    const double drift = quadric_defect(f[0]);
    max_drift = std::max(max_drift, drift);
    if (!(drift <= 10.0 * tol_embed)) {
      throw NumericalError("quadric drift " + std::to_string(drift) + " exceeds 10 tol_embed in one step");
    }
    const double scale = std::sqrt(1.0 / (sys.kappa * base_dot(f[0], f[0], sys.sig)));
    for (int k = 0; k < 3; ++k) f[0][k] *= scale;
    max_defect = std::max(max_defect, quadric_defect(f[0]));
  }

  /// Advance from node k to node k + 1 along `line`.
  Frame step(Frame f, const std::vector<Coeff>& line, int k, double h, bool along_s) {
    const double dh = h / substeps;
    for (int m = 0; m < substeps; ++m) {
      const double x0 = k + static_cast<double>(m) / substeps;
      const double xh = x0 + 0.5 / substeps;
      const double x1 = x0 + 1.0 / substeps;
      const Coeff c0 = lerp_cubic(line, x0);
      const Coeff ch = lerp_cubic(line, xh);
      const Coeff c1 = lerp_cubic(line, x1);
      const Frame k1 = sys.rhs(f, c0, along_s);
      const Frame k2 = sys.rhs(axpy(f, 0.5 * dh, k1), ch, along_s);
      const Frame k3 = sys.rhs(axpy(f, 0.5 * dh, k2), ch, along_s);
      const Frame k4 = sys.rhs(axpy(f, dh, k3), c1, along_s);
      for (int q = 0; q < 4; ++q) f[q] = f[q] + (dh / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
      project(f);
    }
    return f;
  }
};

Frame initial_frame(const FundamentalData& data, double kappa) {
  const double lam = data.lambda(0, 0);
  const double rl = std::sqrt(lam);
  const cplx A = data.A(0, 0);
  std::array<double, 3> w{2.0 * A.real() / rl, -2.0 * A.imag() / rl, data.u(0, 0)};
  const double wn = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  for (auto& c : w) c /= wn;
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(w[k]) < std::abs(w[axis])) axis = k;
  std::array<double, 3> r1{0.0, 0.0, 0.0};
  r1[axis] = 1.0;
  const double d = w[axis];
  for (int k = 0; k < 3; ++k) r1[k] -= d * w[k];
  const double r1n = std::sqrt(r1[0] * r1[0] + r1[1] * r1[1] + r1[2] * r1[2]);
  for (auto& c : r1) c /= r1n;
  const std::array<double, 3> r2{w[1] * r1[2] - w[2] * r1[1], w[2] * r1[0] - w[0] * r1[2],
                                 w[0] * r1[1] - w[1] * r1[0]};
  // Columns of the matrix with rows (r1, r2, w) are e_s, e_t, eta in the
  // tangent basis (e1, e2, vertical) at x = e0 / sqrt|kappa|.
  Frame f;
  f[0] = {1.0 / std::sqrt(std::abs(kappa)), 0.0, 0.0, 0.0};
  f[1] = {0.0, rl * r1[0], rl * r2[0], rl * w[0]};
  f[2] = {0.0, rl * r1[1], rl * r2[1], rl * w[1]};
  f[3] = {0.0, r1[2], r2[2], w[2]};
  return f;
}

}  // namespace

Signature signature_for(const SpaceParams& params) {
  return params.kappa() > 0.0 ? Signature::Euclidean4 : Signature::Minkowski4;
}

double base_dot(const Vec4& a, const Vec4& b, Signature sig) noexcept {
  const double first = a[0] * b[0];
  return (sig == Signature::Minkowski4 ? -first : first) + a[1] * b[1] + a[2] * b[2];
}

double ambient_dot(const Vec4& a, const Vec4& b, Signature sig) noexcept {
  return base_dot(a, b, sig) + a[3] * b[3];
}

HeightField integrate_height(const FundamentalData& data, const Tolerances& tol) {
  if (!data.params.is_product()) throw PreconditionError("height function needs tau = 0");
  data.validate();
  const Chart& chart = data.chart;
  RealField hs(chart);
  RealField ht(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    hs.values()[k] = 2.0 * data.A.values()[k].real();
    ht.values()[k] = -2.0 * data.A.values()[k].imag();
  }
  HeightField out;
  out.h = RealField(chart);
  for (int i = 1; i < chart.ns; ++i) out.h(i, 0) = out.h(i - 1, 0) + 0.5 * chart.hs() * (hs(i, 0) + hs(i - 1, 0));
  for (int i = 0; i < chart.ns; ++i) {
    for (int j = 1; j < chart.nt; ++j) out.h(i, j) = out.h(i, j - 1) + 0.5 * chart.ht() * (ht(i, j) + ht(i, j - 1));
  }
  const RealField a = d_t(hs, chart);
  const RealField b = d_s(ht, chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    out.closedness_defect = std::max(out.closedness_defect, std::abs(a.values()[k] - b.values()[k]));
  }
  if (out.closedness_defect > tol.fd(chart)) {
    throw NumericalError("height 1-form is not closed: defect " + std::to_string(out.closedness_defect));
  }
  return out;
}

Reconstruction reconstruct_surface(const FundamentalData& data, const ReconstructOptions& opts, const Tolerances& tol) {
  if (!data.params.is_product()) throw PreconditionError("reconstruction is only available for tau = 0");
  if (opts.substeps < 1) throw PreconditionError("substeps must be >= 1");
  if (data.chart.ns < 5 || data.chart.nt < 5) throw PreconditionError("reconstruction needs at least 5 x 5 nodes");
  if (!(opts.tol_embed > 0.0)) throw PreconditionError("tol_embed must be positive");
  data.validate();
  const Chart& chart = data.chart;

  bool all_unit = true;
  bool all_interior = true;
  for (double u : data.u.values()) {
    all_unit = all_unit && std::abs(std::abs(u) - 1.0) <= tol.alg;
    all_interior = all_interior && u * u < 1.0 - tol.alg;
  }
  if (!all_unit && !all_interior) {
    throw PreconditionError("angle function touches +-1 on part of the chart only");
  }
  if (opts.check_residuals) {
    const ResidualReport report = residuals(data, {}, tol);
    if (!report.all_pass()) throw PreconditionError("data fails the structure equations; refusing to reconstruct");
  }

  const double kappa = data.params.kappa();
  // Fourth order so the independently integrated columns agree to O(h^4);
  // second-order edge stencils leave O(h^2) column-to-column noise that the
  // mesh differences of measure_mesh amplify.
  const RealField ls = d_s(data.lambda, chart, Stencil::Fourth);
  const RealField lt = d_t(data.lambda, chart, Stencil::Fourth);
  auto coeff = [&](int i, int j) {
    const double lam = data.lambda(i, j);
    const double H = data.H(i, j);
    const cplx p = data.p(i, j);
    return Coeff{lam, ls(i, j), lt(i, j), lam * H + 2.0 * p.real(), -2.0 * p.imag(), lam * H - 2.0 * p.real()};
  };
  auto row = [&](int j) {
    std::vector<Coeff> out;
    for (int i = 0; i < chart.ns; ++i) out.push_back(coeff(i, j));
    return out;
  };
  auto column = [&](int i) {
    std::vector<Coeff> out;
    for (int j = 0; j < chart.nt; ++j) out.push_back(coeff(i, j));
    return out;
  };

  Integrator integ{System{kappa, signature_for(data.params)}, opts.substeps, opts.tol_embed};
  Reconstruction out;
  out.mesh.params = data.params;
  out.mesh.chart = chart;
  out.mesh.signature = integ.sys.sig;
  out.mesh.vertices.assign(chart.size(), Vec4{});

  const Frame start = initial_frame(data, kappa);
  std::vector<Frame> bottom(static_cast<std::size_t>(chart.ns));
  bottom[0] = start;
  const auto row0 = row(0);
  for (int i = 0; i + 1 < chart.ns; ++i) {
    bottom[static_cast<std::size_t>(i) + 1] = integ.step(bottom[static_cast<std::size_t>(i)], row0, i, chart.hs(), true);
  }
  for (int i = 0; i < chart.ns; ++i) {
    const auto col = column(i);
    Frame f = bottom[static_cast<std::size_t>(i)];
    out.mesh.at(i, 0) = f[0];
    for (int j = 0; j + 1 < chart.nt; ++j) {
      f = integ.step(f, col, j, chart.ht(), false);
      out.mesh.at(i, j + 1) = f[0];
    }
  }

  // Second path: up the first column, then across the top row.
  {
    const auto col0 = column(0);
    Frame f = start;
    for (int j = 0; j + 1 < chart.nt; ++j) f = integ.step(f, col0, j, chart.ht(), false);
    const auto top = row(chart.nt - 1);
    for (int i = 0; i + 1 < chart.ns; ++i) f = integ.step(f, top, i, chart.hs(), true);
    const Vec4 diff = f[0] - out.mesh.at(chart.ns - 1, chart.nt - 1);
    out.holonomy_defect = std::sqrt(diff[0] * diff[0] + diff[1] * diff[1] + diff[2] * diff[2] + diff[3] * diff[3]);
  }
  out.max_step_drift = integ.max_drift;
  for (const Vec4& x : out.mesh.vertices) out.max_quadric_defect = std::max(out.max_quadric_defect, integ.quadric_defect(x));
  return out;
}

MeasuredData measure_mesh(const SurfaceMesh& mesh) {
  const Chart& chart = mesh.chart;
  chart.validate();
  if (mesh.vertices.size() != chart.size()) throw PreconditionError("mesh vertex count does not match its chart");
  const Signature sig = mesh.signature;
  const double hs = chart.hs();
  const double ht = chart.ht();

  MeasuredData out;
  out.interior = Chart{chart.s(1), chart.s(chart.ns - 2), chart.t(1), chart.t(chart.nt - 2), chart.ns - 2, chart.nt - 2};
  for (RealField* f : {&out.lambda, &out.H, &out.u, &out.k1, &out.k2, &out.conformality}) {
    *f = RealField(chart.ns - 2, chart.nt - 2);
  }
  auto dot = [&](const Vec4& a, const Vec4& b) { return ambient_dot(a, b, sig); };

  for (int j = 1; j + 1 < chart.nt; ++j) {
    for (int i = 1; i + 1 < chart.ns; ++i) {
      const Vec4& x = mesh.at(i, j);
      const Vec4 ps = (0.5 / hs) * (mesh.at(i + 1, j) - mesh.at(i - 1, j));
      const Vec4 pt = (0.5 / ht) * (mesh.at(i, j + 1) - mesh.at(i, j - 1));
      const Vec4 pss = (1.0 / (hs * hs)) * (mesh.at(i + 1, j) - 2.0 * x + mesh.at(i - 1, j));
      const Vec4 ptt = (1.0 / (ht * ht)) * (mesh.at(i, j + 1) - 2.0 * x + mesh.at(i, j - 1));
      const Vec4 pst = (0.25 / (hs * ht)) *
                       (mesh.at(i + 1, j + 1) - mesh.at(i + 1, j - 1) - mesh.at(i - 1, j + 1) + mesh.at(i - 1, j - 1));
      const double E = dot(ps, ps);
      const double F = dot(ps, pt);
      const double G = dot(pt, pt);
      const double W = E * G - F * F;
      if (!(E > 0.0) || !(G > 0.0) || !(W > 0.0)) {
        throw NumericalError("degenerate mesh at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      const Vec4 N = base(x);
      Vec4 eta = cross4(N, ps, pt);
      if (sig == Signature::Minkowski4) eta[0] = -eta[0];  // raise the index
      const double nn = dot(eta, eta);
      if (!(nn > 0.0)) throw NumericalError("normal is not spacelike");
      eta = (1.0 / std::sqrt(nn)) * eta;
      if (det4(N, ps, pt, eta) < 0.0) eta = -1.0 * eta;

      const double b11 = dot(pss, eta);
      const double b12 = dot(pst, eta);
      const double b22 = dot(ptt, eta);
      const double H = (E * b22 - 2.0 * F * b12 + G * b11) / (2.0 * W);
      const double Ke = (b11 * b22 - b12 * b12) / W;
      const double disc = std::sqrt(std::max(H * H - Ke, 0.0));
      const double lam = 0.5 * (E + G);
      const int a = i - 1;
      const int b = j - 1;
      out.lambda(a, b) = lam;
      out.H(a, b) = H;
      out.u(a, b) = eta[3];
      out.k1(a, b) = H + disc;
      out.k2(a, b) = H - disc;
      out.conformality(a, b) = std::max(0.5 * std::abs(E - G), std::abs(F)) / lam;
    }
  }
  return out;
}

std::vector<double> edge_lengths(const SurfaceMesh& mesh) {
  const Chart& chart = mesh.chart;
  std::vector<double> out;
  out.reserve(2 * chart.size());
  auto len = [&](const Vec4& a, const Vec4& b) {
    const Vec4 d = b - a;
    return std::sqrt(std::abs(ambient_dot(d, d, mesh.signature)));
  };
  for (int j = 0; j < chart.nt; ++j)
    for (int i = 0; i + 1 < chart.ns; ++i) out.push_back(len(mesh.at(i, j), mesh.at(i + 1, j)));
  for (int j = 0; j + 1 < chart.nt; ++j)
    for (int i = 0; i < chart.ns; ++i) out.push_back(len(mesh.at(i, j), mesh.at(i, j + 1)));
  return out;
}

}  // namespace bcv
