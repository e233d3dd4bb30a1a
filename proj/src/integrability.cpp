#include "bcv/integrability.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bcv/errors.hpp"

namespace bcv {

namespace {

void require_positive_lambda(const FundamentalData& data) {
  for (double l : data.lambda.values()) {
    if (!(l > 0.0)) throw PreconditionError("conformal factor lambda must be positive");
  }
}

}  // namespace

template <class T>
std::pair<double, double> interior_stats(const Grid<T>& f, int margin) {
  const int m = std::max(0, margin);
  double mx = 0.0;
  double sq = 0.0;
  std::size_t count = 0;
  for (int j = m; j < f.nt() - m; ++j) {
    for (int i = m; i < f.ns() - m; ++i) {
      const double v = std::abs(f(i, j));
      mx = std::max(mx, v);
      sq += v * v;
      ++count;
    }
  }
  return {mx, count ? std::sqrt(sq / static_cast<double>(count)) : 0.0};
}
template std::pair<double, double> interior_stats(const RealField&, int);
template std::pair<double, double> interior_stats(const ComplexField&, int);

bool ResidualReport::all_pass() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const ResidualEntry& ResidualReport::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw PreconditionError("no residual entry named '" + name + "'");
}

RealField gaussian_curvature(const FundamentalData& data, Stencil st) {
  require_positive_lambda(data);
  RealField log_lambda(data.chart);
  std::transform(data.lambda.values().begin(), data.lambda.values().end(), log_lambda.values().begin(),
                 [](double l) { return std::log(l); });
  // d_z d_zbar = Laplacian / 4
  RealField K = laplacian(log_lambda, data.chart, st);
  for (std::size_t k = 0; k < K.size(); ++k) K.values()[k] *= -0.5 / data.lambda.values()[k];
  return K;
}

RealField shape_det(const FundamentalData& data) {
  require_positive_lambda(data);
  RealField out(data.chart);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double l = data.lambda.values()[k];
    const double h = data.H.values()[k];
    out.values()[k] = h * h - 4.0 * std::norm(data.p.values()[k]) / (l * l);
  }
  return out;
}

RealField gauss_residual(const FundamentalData& data, Stencil st) {
  RealField K = gaussian_curvature(data, st);
  const RealField det = shape_det(data);
  const double tau2 = data.params.tau() * data.params.tau();
  const double gap = data.params.curvature_gap();
  for (std::size_t k = 0; k < K.size(); ++k) {
    const double u = data.u.values()[k];
    K.values()[k] -= det.values()[k] + tau2 + gap * u * u;
  }
  return K;
}

PrincipalCurvatures principal_curvatures(const FundamentalData& data) {
  require_positive_lambda(data);
  PrincipalCurvatures out{RealField(data.chart), RealField(data.chart)};
  for (std::size_t k = 0; k < data.chart.size(); ++k) {
    const double r = 2.0 * std::abs(data.p.values()[k]) / data.lambda.values()[k];
    out.k1.values()[k] = data.H.values()[k] + r;
    out.k2.values()[k] = data.H.values()[k] - r;
  }
  return out;
}

ResidualFields residual_fields(const FundamentalData& data, Stencil st) {
  data.validate();
  const Chart& chart = data.chart;
  const double tau = data.params.tau();
  const double gap = data.params.curvature_gap();
  const cplx i_unit(0.0, 1.0);

  const ComplexField p_zbar = wirtinger_zbar(data.p, chart, st);
  const ComplexField A_zbar = wirtinger_zbar(data.A, chart, st);
  const ComplexField A_z = wirtinger_z(data.A, chart, st);
  const ComplexField H_z = wirtinger_z(data.H, chart, st);
  const ComplexField u_z = wirtinger_z(data.u, chart, st);
  const ComplexField lambda_z = wirtinger_z(data.lambda, chart, st);

  ResidualFields r{ComplexField(chart), ComplexField(chart), ComplexField(chart), ComplexField(chart),
                   RealField(chart), gauss_residual(data, st)};
  for (std::size_t k = 0; k < chart.size(); ++k) {
    const double l = data.lambda.values()[k];
    const double u = data.u.values()[k];
    const double H = data.H.values()[k];
    const cplx p = data.p.values()[k];
    const cplx A = data.A.values()[k];
    r.c1.values()[k] = p_zbar.values()[k] - 0.5 * l * (H_z.values()[k] + u * A * gap);
    r.c2.values()[k] = A_zbar.values()[k] - 0.5 * u * l * (H + i_unit * tau);
    r.c3.values()[k] = u_z.values()[k] + (H - i_unit * tau) * A + (2.0 / l) * p * std::conj(A);
    r.c4.values()[k] = 4.0 * std::norm(A) / l - (1.0 - u * u);
    r.c0.values()[k] = A_z.values()[k] - (lambda_z.values()[k] / l) * A - u * p;
  }
  return r;
}

ResidualReport residuals(const FundamentalData& data, const ResidualOptions& opts, const Tolerances& tol) {
  require_positive_lambda(data);
  const ResidualFields r = residual_fields(data, opts.stencil);
  ResidualReport report;
  report.tolerance = opts.tolerance > 0.0 ? opts.tolerance : tol.fd(data.chart);
  auto add = [&](const char* name, const auto& field) {
    const auto [mx, rms] = interior_stats(field, opts.margin);
    report.entries.push_back({name, mx, rms, report.tolerance, mx <= report.tolerance});
  };
  add("C0", r.c0);
  add("C1", r.c1);
  add("C2", r.c2);
  add("C3", r.c3);
  add("C4", r.c4);
  add("Gauss", r.gauss);
  return report;
}

void write_csv(std::ostream& out, const ResidualReport& report) {
  const auto old_precision = out.precision(17);
  out << "equation,max_abs,rms,tolerance,pass\n";
  for (const auto& e : report.entries) {
    out << e.name << ',' << e.max_abs << ',' << e.rms << ',' << e.tolerance << ','
        << (e.pass ? "true" : "false") << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bcv
