#include "bcv/audit.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bcv/errors.hpp"
#include "bcv/integrability.hpp"
#include "bcv/mates.hpp"

namespace bcv {

namespace {

const cplx kI(0.0, 1.0);

template <class T>
AuditEntry entry(const std::string& name, const Grid<T>& field, int margin, double tolerance) {
  const auto [mx, rms] = interior_stats(field, margin);
  return {name, mx, rms, tolerance, mx <= tolerance};
}

template <class T>
Grid<T> integrate_gradient_impl(const Grid<T>& fs, const Grid<T>& ft, const Chart& chart) {
  Grid<T> out(chart, T{});
  for (int i = 1; i < chart.ns; ++i) out(i, 0) = out(i - 1, 0) + 0.5 * chart.hs() * (fs(i, 0) + fs(i - 1, 0));
  for (int i = 0; i < chart.ns; ++i) {
    for (int j = 1; j < chart.nt; ++j) out(i, j) = out(i, j - 1) + 0.5 * chart.ht() * (ft(i, j) + ft(i, j - 1));
  }
  return out;
}

RealField masked(const RealField& f, const Grid<char>& keep) {
  RealField out = f;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!keep.values()[k]) out.values()[k] = 0.0;
  }
  return out;
}

}  // namespace

RealField integrate_gradient(const RealField& fs, const RealField& ft, const Chart& chart) {
  return integrate_gradient_impl(fs, ft, chart);
}
ComplexField integrate_gradient(const ComplexField& fs, const ComplexField& ft, const Chart& chart) {
  return integrate_gradient_impl(fs, ft, chart);
}

RealField alignment_defect(const RealField& f, const RealField& g, const Chart& chart) {
  const RealField fs = d_s(f, chart);
  const RealField ft = d_t(f, chart);
  const RealField gs = d_s(g, chart);
  const RealField gt = d_t(g, chart);
  RealField out(chart);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double cross = fs.values()[k] * gt.values()[k] - ft.values()[k] * gs.values()[k];
    const double norms = std::hypot(fs.values()[k], ft.values()[k]) * std::hypot(gs.values()[k], gt.values()[k]);
    out.values()[k] = std::abs(cross) / std::max(norms, 1.0);
  }
  return out;
}

bool AuditReport::all_pass() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

bool AuditReport::has(const std::string& identity) const noexcept {
  return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.identity == identity; });
}

const AuditEntry& AuditReport::at(const std::string& identity) const {
  for (const auto& e : entries) {
    if (e.identity == identity) return e;
  }
  throw PreconditionError("audit has no entry '" + identity + "'");
}

bool AuditReport::has_flag(const std::string& needle) const noexcept {
  return std::any_of(flags.begin(), flags.end(), [&](const auto& f) { return f.find(needle) != std::string::npos; });
}

AuditReport audit_positive_pair(const PairData& pair, const AuditOptions& opts, const Tolerances& tol) {
  if (pair.epsilon != 1) throw PreconditionError("positive-pair audit needs epsilon = +1");
  const FundamentalData& a = pair.first;
  const FundamentalData& b = pair.second;
  const Chart& chart = a.chart;
  const double tau = a.params.tau();
  const double tol_fd = tol.fd(chart);

  ComplexField alpha(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    alpha.values()[k] = a.A.values()[k] - static_cast<double>(pair.sigma) * b.A.values()[k];
    if (std::abs(alpha.values()[k] + kI) > tol.alg) {
      throw PreconditionError("pair is not normalized: A - sigma A* must equal -i (rescale with normalize_pitch)");
    }
  }

  AuditReport report;
  report.entries.push_back(entry("alpha_holomorphy", wirtinger_zbar(alpha, chart), opts.margin, tol_fd));
  report.entries.push_back(entry("H_profile_flatness", d_t(a.H, chart), opts.margin, tol_fd));

  report.f = RealField(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) report.f.values()[k] = -a.A.values()[k].real();

  // delta = tau t + int H ds, integrated along each row from s_min.
  report.delta = RealField(chart);
  for (int j = 0; j < chart.nt; ++j) {
    std::vector<double> row(static_cast<std::size_t>(chart.ns));
    for (int i = 0; i < chart.ns; ++i) row[static_cast<std::size_t>(i)] = a.H(i, j);
    const auto integral = cumulative_trapezoid(row, chart.hs());
    for (int i = 0; i < chart.ns; ++i) report.delta(i, j) = tau * chart.t(j) + integral[static_cast<std::size_t>(i)];
  }
  report.entries.push_back(
      entry("f_delta_alignment", alignment_defect(report.f, report.delta, chart), opts.margin, tol_fd));

  const ComplexField f_zbar = wirtinger_zbar(report.f, chart);
  ComplexField eq_f(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    eq_f.values()[k] = -f_zbar.values()[k] -
                       0.5 * a.lambda.values()[k] * a.u.values()[k] * cplx(a.H.values()[k], tau);
  }
  report.entries.push_back(entry("f_zbar_identity", eq_f, opts.margin, tol_fd));

  report.F = ComplexField(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    report.F.values()[k] = a.p.values()[k] / cplx(a.H.values()[k], -tau);
  }

  if (has_constant_mean_curvature(a, tol)) {
    const RealField ds = d_s(report.delta, chart);
    const RealField dt = d_t(report.delta, chart);
    const ComplexField Fs = d_s(report.F, chart);
    const ComplexField Ft = d_t(report.F, chart);
    const RealField fs = d_s(report.f, chart);
    const RealField ft = d_t(report.f, chart);
    ComplexField level(chart);
    RealField estre(chart);
    Grid<char> keep(chart, 1);
    bool any = false;
    for (std::size_t k = 0; k < chart.size(); ++k) {
      const double gs = ds.values()[k];
      const double gt = dt.values()[k];
      const double g2 = gs * gs + gt * gt;
      if (std::sqrt(g2) <= opts.mask_tol) {
        keep.values()[k] = 0;
        continue;
      }
      any = true;
      // Derivative of F along the level set of delta.
      level.values()[k] = (-gt * Fs.values()[k] + gs * Ft.values()[k]) / std::sqrt(g2);
      const double f_prime = (fs.values()[k] * gs + ft.values()[k] * gt) / g2;
      estre.values()[k] = a.lambda.values()[k] * a.u.values()[k] + f_prime;
    }
    if (any) {
      report.entries.push_back(entry("F_delta_constancy", level, opts.margin, tol_fd));
      report.entries.push_back(entry("estre", masked(estre, keep), opts.margin, tol_fd));
    } else {
      report.flags.emplace_back("delta is constant (H = tau = 0): F and estre checks skipped");
    }
  } else {
    report.flags.emplace_back("H not constant: F and estre checks skipped");
  }
  return report;
}

AuditReport audit_negative_pair(const PairData& pair, const AuditOptions& opts, const Tolerances& tol) {
  if (pair.epsilon != -1) throw PreconditionError("negative-pair audit needs epsilon = -1");
  const FundamentalData& a = pair.first;
  const FundamentalData& b = pair.second;
  if (a.params.is_product()) throw PreconditionError("negative-pair audit needs tau != 0");
  const Chart& chart = a.chart;
  const double tau = a.params.tau();
  const double sigma = static_cast<double>(pair.sigma);
  const double tol_fd = tol.fd(chart);

  AuditReport report;
  // phi_s = A - sigma conj(A*), phi_t = i (A + sigma conj(A*)); beta_z = A - sigma A*.
  ComplexField phi_s(chart);
  ComplexField phi_t(chart);
  ComplexField beta_z(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    const cplx A = a.A.values()[k];
    const cplx As = b.A.values()[k];
    phi_s.values()[k] = A - sigma * std::conj(As);
    phi_t.values()[k] = kI * (A + sigma * std::conj(As));
    beta_z.values()[k] = A - sigma * As;
  }
  report.phi = integrate_gradient(phi_s, phi_t, chart);
  report.beta = RealField(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) report.beta.values()[k] = 2.0 * report.phi.values()[k].real();

  Grid<char> keep(chart, 0);
  bool any = false;
  report.f = RealField(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    if (std::abs(beta_z.values()[k]) > opts.mask_tol) {
      keep.values()[k] = 1;
      any = true;
      report.f.values()[k] = (a.A.values()[k] / beta_z.values()[k]).imag();
    }
  }
  if (!any) {
    report.flags.emplace_back("case A=sigma A*: helicoidal mates branch (beta_z vanishes on the chart)");
    return report;
  }
  RealField consistency(chart);
  for (std::size_t k = 0; k < chart.size(); ++k) {
    if (!keep.values()[k]) continue;
    const cplx expected = cplx(-0.5, report.f.values()[k]) * beta_z.values()[k];
    consistency.values()[k] = std::abs(sigma * b.A.values()[k] - expected);
  }
  report.entries.push_back(entry("beta_f_consistency", consistency, opts.margin, tol_fd));
  report.entries.push_back(
      entry("f_beta_alignment", masked(alignment_defect(report.f, report.beta, chart), keep), opts.margin, tol_fd));
  report.entries.push_back(
      entry("H_beta_alignment", masked(alignment_defect(a.H, report.beta, chart), keep), opts.margin, tol_fd));

  bool is_twin = has_constant_mean_curvature(a, tol);
  if (is_twin) {
    const cplx phase = twin_phase(a.H(0, 0), tau);
    for (std::size_t k = 0; k < chart.size() && is_twin; ++k) {
      is_twin = std::abs(b.A.values()[k] - phase * a.A.values()[k]) <= tol.alg;
    }
  }
  if (is_twin) {
    RealField case_a(chart);
    for (std::size_t k = 0; k < chart.size(); ++k) {
      if (keep.values()[k]) case_a.values()[k] = 2.0 * report.f.values()[k] * a.H.values()[k] - tau;
    }
    report.entries.push_back(entry("caseA_2fH_tau", case_a, opts.margin, tol.alg));
  } else {
    report.flags.emplace_back("not a twin pair: Case A identity skipped");
  }
  return report;
}

void write_csv(std::ostream& out, const AuditReport& report) {
  const auto old_precision = out.precision(17);
  out << "identity,max,rms,tol,pass\n";
  for (const auto& e : report.entries) {
    out << e.identity << ',' << e.max_abs << ',' << e.rms << ',' << e.tolerance << ',' << (e.pass ? "true" : "false")
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace bcv
