#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcv/fundata.hpp"

namespace bcv {

/// Ambient isometries grouped by their action on base and fiber orientation.
/// The two mixed cases exist only in product spaces.
enum class IsometryCase { PreserveBoth, ReverseBoth, PreserveBaseReverseFiber, ReverseBasePreserveFiber };

std::string_view to_string(IsometryCase c);
IsometryCase parse_isometry_case(std::string_view name);
bool is_legal(IsometryCase c, const SpaceParams& params) noexcept;
std::vector<IsometryCase> legal_cases(const SpaceParams& params);

/// Associate minimal family in a product space: (lambda, u, 0, e^{i theta} p, e^{i theta} A).
FundamentalData associate(const FundamentalData& data, double theta, const Tolerances& tol = {});

/// Bonnet mate of helicoidal data in a product space: (lambda, u, H, conj p, conj A).
FundamentalData helicoidal_mate_product(const FundamentalData& data, const Tolerances& tol = {});

/// e^{i alpha} with e^{i alpha}(H + i tau) = -H + i tau.
cplx twin_phase(double H, double tau);

/// Twin CMC immersion for tau != 0: (lambda, u, -H, e^{i alpha} p, e^{i alpha} A).
FundamentalData twin(const FundamentalData& data, const Tolerances& tol = {});

/// Negative helicoidal mate for tau != 0: (lambda, u, -H, -conj p, -conj A).
FundamentalData helicoidal_mate_screw(const FundamentalData& data, const Tolerances& tol = {});

/// e^{i alpha} with H2 + i tau2 = e^{i alpha}(H1 + i tau1).
cplx sister_phase(double H1, double tau1, double H2, double tau2);

/// Sister CMC surface in `target` with mean curvature H2:
/// (lambda, u, H2, e^{i alpha} p, e^{i alpha} A).
FundamentalData sister(const FundamentalData& data, const SpaceParams& target, double H2,
                       const Tolerances& tol = {});

/// Data of Psi o psi for an isometry Psi of the given kind.
FundamentalData isometry_action(const FundamentalData& data, IsometryCase c);

/// Data of z -> psi(conj z) with the orientation induced by z, for data that
/// depend on s only: (lambda, -u, -H, -conj p, conj A).
FundamentalData conjugate_parameter(const FundamentalData& data, const Tolerances& tol = {});

/// Returns the isometry case c with b == isometry_action(a, c) within tol.alg,
/// if any. Both data sets must share chart and parameters.
std::optional<IsometryCase> pointwise_congruent(const FundamentalData& a, const FundamentalData& b,
                                                const Tolerances& tol = {});

/// Two data sets on a common chart with u* = sigma u and H* = epsilon H.
struct PairData {
  FundamentalData first;
  FundamentalData second;
  int sigma = 1;
  int epsilon = 1;
};

/// Validates the candidate Bonnet pair conditions: equal conformal factors,
/// u^2 = u*^2 with a single sign sigma, H* = epsilon H (epsilon = 1 when
/// tau = 0). Violations are collected and reported together.
PairData make_pair(const FundamentalData& a, const FundamentalData& b, const Tolerances& tol = {});

/// True when every field depends on s only (t-derivatives within tol.fd).
bool depends_only_on_s(const FundamentalData& data, const Tolerances& tol = {});

/// True when H is constant on the chart within tol.alg.
bool has_constant_mean_curvature(const FundamentalData& data, const Tolerances& tol = {});

}  // namespace bcv
