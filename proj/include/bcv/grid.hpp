#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bcv {

using cplx = std::complex<double>;

/// Uniform rectangular chart of the conformal parameter z = s + i t.
/// Node (i, j) sits at s = s_min + i hs, t = t_min + j ht.
struct Chart {
  double s_min = 0.0;
  double s_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
  int ns = 4;
  int nt = 4;

  /// Throws PreconditionError unless bounds are ordered and ns, nt >= 4.
  void validate() const;

  double hs() const noexcept { return (s_max - s_min) / (ns - 1); }
  double ht() const noexcept { return (t_max - t_min) / (nt - 1); }
  double h_max() const noexcept;
  double s(int i) const noexcept { return s_min + i * hs(); }
  double t(int j) const noexcept { return t_min + j * ht(); }
  cplx z(int i, int j) const noexcept { return {s(i), t(j)}; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(ns) * nt; }

  friend bool operator==(const Chart&, const Chart&) = default;
};

/// Node values on an ns x nt chart, stored row-major with t outer and s inner.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int ns, int nt, T fill = T{}) : ns_(ns), nt_(nt), data_(static_cast<std::size_t>(ns) * nt, fill) {}
  explicit Grid(const Chart& chart, T fill = T{}) : Grid(chart.ns, chart.nt, fill) {}

  int ns() const noexcept { return ns_; }
  int nt() const noexcept { return nt_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(int i, int j) noexcept { return data_[static_cast<std::size_t>(j) * ns_ + i]; }
  const T& operator()(int i, int j) const noexcept {
    return data_[static_cast<std::size_t>(j) * ns_ + i];
  }

  std::vector<T>& values() noexcept { return data_; }
  const std::vector<T>& values() const noexcept { return data_; }

  bool matches(const Chart& chart) const noexcept { return ns_ == chart.ns && nt_ == chart.nt; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int ns_ = 0;
  int nt_ = 0;
  std::vector<T> data_;
};

using RealField = Grid<double>;
using ComplexField = Grid<cplx>;

/// Sample f(s, t) on every node of the chart.
template <class T, class F>
Grid<T> sample(const Chart& chart, F&& f) {
  Grid<T> g(chart);
  for (int j = 0; j < chart.nt; ++j)
    for (int i = 0; i < chart.ns; ++i) g(i, j) = f(chart.s(i), chart.t(j));
  return g;
}

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);

/// Finite-difference order. Second: central in the interior, one-sided
/// three-point (four-point for second derivatives) at the ends of each line.
/// Fourth: five-point central, one-sided five/six-point near the ends; lines
/// too short for it fall back to Second.
enum class Stencil { Second, Fourth };

// Output keeps the input shape.
RealField d_s(const RealField& f, const Chart& chart, Stencil st = Stencil::Second);
RealField d_t(const RealField& f, const Chart& chart, Stencil st = Stencil::Second);
ComplexField d_s(const ComplexField& f, const Chart& chart, Stencil st = Stencil::Second);
ComplexField d_t(const ComplexField& f, const Chart& chart, Stencil st = Stencil::Second);

/// (f_s - i f_t) / 2
ComplexField wirtinger_z(const ComplexField& f, const Chart& chart, Stencil st = Stencil::Second);
ComplexField wirtinger_z(const RealField& f, const Chart& chart, Stencil st = Stencil::Second);
/// (f_s + i f_t) / 2
ComplexField wirtinger_zbar(const ComplexField& f, const Chart& chart, Stencil st = Stencil::Second);
ComplexField wirtinger_zbar(const RealField& f, const Chart& chart, Stencil st = Stencil::Second);

/// f_ss + f_tt
RealField laplacian(const RealField& f, const Chart& chart, Stencil st = Stencil::Second);

/// Cumulative trapezoid of samples taken with uniform spacing h; out[0] = 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double h);

}  // namespace bcv
