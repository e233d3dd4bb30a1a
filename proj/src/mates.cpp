#include "bcv/mates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcv/errors.hpp"

namespace bcv {

namespace {

const cplx kI(0.0, 1.0);

template <class T>
double max_abs_diff(const Grid<T>& a, const Grid<T>& b) {
  double mx = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) mx = std::max(mx, std::abs(a.values()[k] - b.values()[k]));
  return mx;
}

template <class T>
double max_abs(const Grid<T>& a) {
  double mx = 0.0;
  for (const auto& v : a.values()) mx = std::max(mx, std::abs(v));
  return mx;
}

template <class T, class F>
Grid<T> map(const Grid<T>& g, F f) {
  Grid<T> out(g.ns(), g.nt());
  std::transform(g.values().begin(), g.values().end(), out.values().begin(), f);
  return out;
}

RealField negate(const RealField& f) {
  return map(f, [](double x) { return -x; });
}
ComplexField scale(const ComplexField& f, cplx c) {
  return map(f, [c](const cplx& x) { return c * x; });
}
ComplexField conjugate(const ComplexField& f, double sign = 1.0) {
  return map(f, [sign](const cplx& x) { return sign * std::conj(x); });
}

double constant_value(const RealField& f, const Tolerances& tol, const char* what) {
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  if (*hi - *lo > tol.alg) throw PreconditionError(std::string(what) + " requires constant mean curvature");
  return 0.5 * (*lo + *hi);
}

void require_s_only(const FundamentalData& data, const Tolerances& tol, const char* what) {
  if (!depends_only_on_s(data, tol)) {
    throw PreconditionError(std::string(what) + " requires data depending on s only (t-dependence detected)");
  }
}

}  // namespace

std::string_view to_string(IsometryCase c) {
  switch (c) {
    case IsometryCase::PreserveBoth: return "PreserveBoth";
    case IsometryCase::ReverseBoth: return "ReverseBoth";
    case IsometryCase::PreserveBaseReverseFiber: return "PreserveBaseReverseFiber";
    case IsometryCase::ReverseBasePreserveFiber: return "ReverseBasePreserveFiber";
  }
  return "unknown";
}

IsometryCase parse_isometry_case(std::string_view name) {
  for (auto c : {IsometryCase::PreserveBoth, IsometryCase::ReverseBoth, IsometryCase::PreserveBaseReverseFiber,
                 IsometryCase::ReverseBasePreserveFiber}) {
    if (name == to_string(c)) return c;
  }
  throw PreconditionError("unknown isometry case '" + std::string(name) + "'");
}

bool is_legal(IsometryCase c, const SpaceParams& params) noexcept {
  return params.is_product() || c == IsometryCase::PreserveBoth || c == IsometryCase::ReverseBoth;
}

std::vector<IsometryCase> legal_cases(const SpaceParams& params) {
  std::vector<IsometryCase> out{IsometryCase::PreserveBoth, IsometryCase::ReverseBoth};
  if (params.is_product()) {
    out.push_back(IsometryCase::PreserveBaseReverseFiber);
    out.push_back(IsometryCase::ReverseBasePreserveFiber);
  }
  return out;
}

bool depends_only_on_s(const FundamentalData& data, const Tolerances& tol) {
  const Chart& c = data.chart;
  const double limit = tol.fd(c);
  return max_abs(d_t(data.lambda, c)) <= limit && max_abs(d_t(data.u, c)) <= limit &&
         max_abs(d_t(data.H, c)) <= limit && max_abs(d_t(data.p, c)) <= limit &&
         max_abs(d_t(data.A, c)) <= limit;
}

bool has_constant_mean_curvature(const FundamentalData& data, const Tolerances& tol) {
  const auto [lo, hi] = std::minmax_element(data.H.values().begin(), data.H.values().end());
  return *hi - *lo <= tol.alg;
}

FundamentalData associate(const FundamentalData& data, double theta, const Tolerances& tol) {
  if (!data.params.is_product() || max_abs(data.H) > tol.alg) {
    throw PreconditionError("associate family exists only for minimal surfaces in products");
  }
  const cplx phase = std::polar(1.0, theta);
  FundamentalData out = data;
  std::fill(out.H.values().begin(), out.H.values().end(), 0.0);
  out.p = scale(data.p, phase);
  out.A = scale(data.A, phase);
  return out;
}

FundamentalData helicoidal_mate_product(const FundamentalData& data, const Tolerances& tol) {
  if (!data.params.is_product()) throw PreconditionError("product helicoidal mate requires tau = 0");
  require_s_only(data, tol, "product helicoidal mate");
  FundamentalData out = data;
  out.p = conjugate(data.p);
  out.A = conjugate(data.A);
  return out;
}

cplx twin_phase(double H, double tau) { return cplx(-H, tau) / cplx(H, tau); }

FundamentalData twin(const FundamentalData& data, const Tolerances& tol) {
  if (data.params.is_product()) throw PreconditionError("twin immersions require tau != 0");
  const double H = constant_value(data.H, tol, "twin immersion");
  if (std::abs(H) <= tol.alg) throw PreconditionError("twin immersions require H != 0");
  const cplx phase = twin_phase(H, data.params.tau());
  FundamentalData out = data;
  out.H = negate(data.H);
  out.p = scale(data.p, phase);
  out.A = scale(data.A, phase);
  return out;
}

FundamentalData helicoidal_mate_screw(const FundamentalData& data, const Tolerances& tol) {
  if (data.params.is_product()) throw PreconditionError("screw helicoidal mate requires tau != 0");
  require_s_only(data, tol, "screw helicoidal mate");
  if (max_abs(data.H) <= tol.alg) throw PreconditionError("screw helicoidal mate requires non-minimal data (H != 0)");
  FundamentalData out = data;
  out.H = negate(data.H);
  out.p = conjugate(data.p, -1.0);
  out.A = conjugate(data.A, -1.0);
  return out;
}

cplx sister_phase(double H1, double tau1, double H2, double tau2) {
  const cplx src(H1, tau1);
  if (std::abs(src) == 0.0) return {1.0, 0.0};
  return cplx(H2, tau2) / src;
}

FundamentalData sister(const FundamentalData& data, const SpaceParams& target, double H2,
                       const Tolerances& tol) {
  const double H1 = constant_value(data.H, tol, "sister correspondence");
  const double tau1 = data.params.tau();
  const double tau2 = target.tau();
  std::ostringstream msg;
  if (std::abs(data.params.curvature_gap() - target.curvature_gap()) > tol.alg) {
    msg << "sister correspondence requires kappa1 - 4 tau1^2 = kappa2 - 4 tau2^2 (" << data.params.curvature_gap()
        << " vs " << target.curvature_gap() << ")";
    throw PreconditionError(msg.str());
  }
  if (std::abs(H2 * H2 + tau2 * tau2 - H1 * H1 - tau1 * tau1) > tol.alg) {
    msg << "sister correspondence requires H2^2 + tau2^2 = H1^2 + tau1^2";
    throw PreconditionError(msg.str());
  }
  const cplx phase = sister_phase(H1, tau1, H2, tau2);
  FundamentalData out = data;
  out.params = target;
  std::fill(out.H.values().begin(), out.H.values().end(), H2);
  out.p = scale(data.p, phase);
  out.A = scale(data.A, phase);
  return out;
}

FundamentalData isometry_action(const FundamentalData& data, IsometryCase c) {
  if (!is_legal(c, data.params)) {
    throw PreconditionError("isometries mixing base and fiber orientations exist only when tau = 0");
  }
  FundamentalData out = data;
  switch (c) {
    case IsometryCase::PreserveBoth:
      break;
    case IsometryCase::ReverseBoth:
      out.u = negate(data.u);
      out.A = scale(data.A, -1.0);
      break;
    case IsometryCase::PreserveBaseReverseFiber:
      out.H = negate(data.H);
      out.p = scale(data.p, -1.0);
      out.A = scale(data.A, -1.0);
      break;
    case IsometryCase::ReverseBasePreserveFiber:
      out.u = negate(data.u);
      out.H = negate(data.H);
      out.p = scale(data.p, -1.0);
      break;
  }
  return out;
}

FundamentalData conjugate_parameter(const FundamentalData& data, const Tolerances& tol) {
  require_s_only(data, tol, "conjugate parameter");
  FundamentalData out = data;
  out.u = negate(data.u);
  out.H = negate(data.H);
  out.p = conjugate(data.p, -1.0);
  out.A = conjugate(data.A);
  return out;
}

namespace {

void require_common_chart(const FundamentalData& a, const FundamentalData& b) {
  if (!(a.chart == b.chart)) throw PreconditionError("data sets live on different charts");
  if (!(a.params == b.params)) throw PreconditionError("data sets live in different spaces");
}

}  // namespace

std::optional<IsometryCase> pointwise_congruent(const FundamentalData& a, const FundamentalData& b,
                                                const Tolerances& tol) {
  require_common_chart(a, b);
  for (IsometryCase c : legal_cases(a.params)) {
    const FundamentalData img = isometry_action(a, c);
    if (max_abs_diff(img.lambda, b.lambda) <= tol.alg && max_abs_diff(img.u, b.u) <= tol.alg &&
        max_abs_diff(img.H, b.H) <= tol.alg && max_abs_diff(img.p, b.p) <= tol.alg &&
        max_abs_diff(img.A, b.A) <= tol.alg) {
      return c;
    }
  }
  return std::nullopt;
}

PairData make_pair(const FundamentalData& a, const FundamentalData& b, const Tolerances& tol) {
  require_common_chart(a, b);
  std::vector<std::string> failures;
  if (max_abs_diff(a.lambda, b.lambda) > tol.alg) failures.emplace_back("metric mismatch (lambda differs)");

  bool squares_ok = true;
  bool plus_ok = true;
  bool minus_ok = true;
  bool any_nonzero = false;
  for (std::size_t k = 0; k < a.chart.size(); ++k) {
    const double u = a.u.values()[k];
    const double us = b.u.values()[k];
    if (std::abs(u * u - us * us) > tol.alg) squares_ok = false;
    if (std::abs(u) > tol.alg) {
      any_nonzero = true;
      if (std::abs(us - u) > tol.alg) plus_ok = false;
      if (std::abs(us + u) > tol.alg) minus_ok = false;
    }
  }
  int sigma = 1;
  if (!squares_ok) {
    failures.emplace_back("angle functions violate u^2 = (u*)^2");
  } else if (any_nonzero) {
    if (plus_ok) {
      sigma = 1;
    } else if (minus_ok) {
      sigma = -1;
    } else {
      failures.emplace_back("u* = sigma u holds with different signs on different parts of the chart");
    }
  }

  const bool h_plus = max_abs_diff(a.H, b.H) <= tol.alg;
  const bool h_minus = max_abs_diff(a.H, negate(b.H)) <= tol.alg;
  int epsilon = 1;
  if (h_plus) {
    epsilon = 1;
  } else if (h_minus) {
    epsilon = -1;
    if (a.params.is_product()) failures.emplace_back("epsilon = -1 is not allowed when tau = 0");
  } else {
    failures.emplace_back("mean curvatures violate H* = epsilon H");
  }

  if (!failures.empty()) {
    std::string msg = "not a Bonnet pair candidate:";
    for (const auto& f : failures) msg += " " + f + ";";
    throw PreconditionError(msg);
  }
  return {a, b, sigma, epsilon};
}

}  // namespace bcv
