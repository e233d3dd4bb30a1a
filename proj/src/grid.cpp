#include "bcv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcv/errors.hpp"

namespace bcv {

void Chart::validate() const {
  if (!(std::isfinite(s_min) && std::isfinite(s_max) && std::isfinite(t_min) && std::isfinite(t_max))) {
    throw PreconditionError("chart bounds must be finite");
  }
  if (!(s_min < s_max) || !(t_min < t_max)) {
    throw PreconditionError("chart bounds must satisfy s_min < s_max and t_min < t_max");
  }
  if (ns < 4 || nt < 4) {
    std::ostringstream msg;
    msg << "grid too small: need ns, nt >= 4 (got " << ns << " x " << nt << ")";
    throw PreconditionError(msg.str());
  }
}

double Chart::h_max() const noexcept { return std::max(hs(), ht()); }

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.ns(), f.nt());
  std::transform(f.values().begin(), f.values().end(), out.values().begin(),
                 [](double x) { return cplx(x, 0.0); });
  return out;
}

RealField real_part(const ComplexField& f) {
  RealField out(f.ns(), f.nt());
  std::transform(f.values().begin(), f.values().end(), out.values().begin(),
                 [](const cplx& x) { return x.real(); });
  return out;
}

RealField imag_part(const ComplexField& f) {
  RealField out(f.ns(), f.nt());
  std::transform(f.values().begin(), f.values().end(), out.values().begin(),
                 [](const cplx& x) { return x.imag(); });
  return out;
}

namespace {

void require_shape(int ns, int nt, const Chart& chart) {
  chart.validate();
  if (ns != chart.ns || nt != chart.nt) throw PreconditionError("field shape does not match chart");
}

// First derivative along one grid line; at(k) reads sample k. Fourth order
// needs n >= 5 and falls back to second order otherwise.
template <class T, class At, class Put>
void diff_line(int n, double h, Stencil st, At at, Put put) {
  if (st == Stencil::Fourth && n >= 5) {
    const double c = 1.0 / (12.0 * h);
    put(0, (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) * c);
    put(1, (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) * c);
    for (int k = 2; k < n - 2; ++k) put(k, (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2)) * c);
    put(n - 2, (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) + 6.0 * at(n - 4) - at(n - 5)) * c);
    put(n - 1, (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) - 16.0 * at(n - 4) + 3.0 * at(n - 5)) * c);
    return;
  }
  const double inv2h = 1.0 / (2.0 * h);
  put(0, (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h);
  for (int k = 1; k < n - 1; ++k) put(k, (at(k + 1) - at(k - 1)) * inv2h);
  put(n - 1, (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h);
}

// Second derivative along one grid line of n >= 4 samples (fourth order
// needs n >= 6).
template <class At, class Put>
void diff2_line(int n, double h, Stencil st, At at, Put put) {
  const double inv = 1.0 / (h * h);
  if (st == Stencil::Fourth && n >= 6) {
    const double c = inv / 12.0;
    put(0, (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4) - 10.0 * at(5)) * c);
    put(1, (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) + at(5)) * c);
    for (int k = 2; k < n - 2; ++k) {
      put(k, (-at(k - 2) + 16.0 * at(k - 1) - 30.0 * at(k) + 16.0 * at(k + 1) - at(k + 2)) * c);
    }
    put(n - 2, (10.0 * at(n - 1) - 15.0 * at(n - 2) - 4.0 * at(n - 3) + 14.0 * at(n - 4) - 6.0 * at(n - 5) +
                at(n - 6)) *
                   c);
    put(n - 1, (45.0 * at(n - 1) - 154.0 * at(n - 2) + 214.0 * at(n - 3) - 156.0 * at(n - 4) +
                61.0 * at(n - 5) - 10.0 * at(n - 6)) *
                   c);
    return;
  }
  put(0, (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) * inv);
  for (int k = 1; k < n - 1; ++k) put(k, (at(k + 1) - 2.0 * at(k) + at(k - 1)) * inv);
  put(n - 1, (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) * inv);
}

template <class T>
Grid<T> ds_impl(const Grid<T>& f, const Chart& chart, Stencil st) {
  require_shape(f.ns(), f.nt(), chart);
  Grid<T> out(f.ns(), f.nt());
  for (int j = 0; j < f.nt(); ++j) {
    diff_line<T>(f.ns(), chart.hs(), st, [&](int k) { return f(k, j); },
                 [&](int k, T v) { out(k, j) = v; });
  }
  return out;
}

template <class T>
Grid<T> dt_impl(const Grid<T>& f, const Chart& chart, Stencil st) {
  require_shape(f.ns(), f.nt(), chart);
  Grid<T> out(f.ns(), f.nt());
  for (int i = 0; i < f.ns(); ++i) {
    diff_line<T>(f.nt(), chart.ht(), st, [&](int k) { return f(i, k); },
                 [&](int k, T v) { out(i, k) = v; });
  }
  return out;
}

ComplexField combine(const ComplexField& fs, const ComplexField& ft, double sign) {
  ComplexField out(fs.ns(), fs.nt());
  const cplx i_unit(0.0, sign);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.values()[k] = 0.5 * (fs.values()[k] + i_unit * ft.values()[k]);
  }
  return out;
}

}  // namespace

RealField d_s(const RealField& f, const Chart& chart, Stencil st) { return ds_impl(f, chart, st); }
RealField d_t(const RealField& f, const Chart& chart, Stencil st) { return dt_impl(f, chart, st); }
ComplexField d_s(const ComplexField& f, const Chart& chart, Stencil st) { return ds_impl(f, chart, st); }
ComplexField d_t(const ComplexField& f, const Chart& chart, Stencil st) { return dt_impl(f, chart, st); }

ComplexField wirtinger_z(const ComplexField& f, const Chart& chart, Stencil st) {
  return combine(d_s(f, chart, st), d_t(f, chart, st), -1.0);
}
ComplexField wirtinger_z(const RealField& f, const Chart& chart, Stencil st) {
  return combine(to_complex(d_s(f, chart, st)), to_complex(d_t(f, chart, st)), -1.0);
}
ComplexField wirtinger_zbar(const ComplexField& f, const Chart& chart, Stencil st) {
  return combine(d_s(f, chart, st), d_t(f, chart, st), 1.0);
}
ComplexField wirtinger_zbar(const RealField& f, const Chart& chart, Stencil st) {
  return combine(to_complex(d_s(f, chart, st)), to_complex(d_t(f, chart, st)), 1.0);
}

RealField laplacian(const RealField& f, const Chart& chart, Stencil st) {
  require_shape(f.ns(), f.nt(), chart);
  RealField out(f.ns(), f.nt());
  for (int j = 0; j < f.nt(); ++j) {
    diff2_line(f.ns(), chart.hs(), st, [&](int k) { return f(k, j); },
               [&](int k, double v) { out(k, j) = v; });
  }
  for (int i = 0; i < f.ns(); ++i) {
    diff2_line(f.nt(), chart.ht(), st, [&](int k) { return f(i, k); },
               [&](int k, double v) { out(i, k) += v; });
  }
  return out;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double h) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t k = 1; k < y.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (y[k] + y[k - 1]);
  return out;
}

}  // namespace bcv
