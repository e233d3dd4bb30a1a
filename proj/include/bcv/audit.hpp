#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bcv/mates.hpp"

namespace bcv {

struct AuditEntry {
  std::string identity;
  double max_abs = 0.0;
  double rms = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Numerical checks of the identities satisfied by Bonnet pairs, together
/// with the scalar fields they are built from.
struct AuditReport {
  std::vector<AuditEntry> entries;
  std::vector<std::string> flags;

  RealField f;       // A = -f - i/2 (positive) or A = (1/2 + i f) beta_z (negative)
  RealField delta;   // tau t + int H ds (positive pairs)
  ComplexField F;    // p / (H - i tau) (positive pairs)
  ComplexField phi;  // phi_z = A, phi_zbar = -sigma conj(A*) (negative pairs)
  RealField beta;    // phi + conj(phi) (negative pairs)

  bool all_pass() const noexcept;
  bool has(const std::string& identity) const noexcept;
  const AuditEntry& at(const std::string& identity) const;
  bool has_flag(const std::string& needle) const noexcept;
};

struct AuditOptions {
  int margin = 1;
  /// Nodes with |beta_z| (or |grad delta|) below this are masked.
  double mask_tol = 1e-8;
};

/// Positive pair (epsilon = +1), normalized so that A - sigma A* = -i.
/// Entries: alpha_holomorphy, H_profile_flatness, f_delta_alignment,
/// f_zbar_identity, and for constant H also F_delta_constancy and estre.
AuditReport audit_positive_pair(const PairData& pair, const AuditOptions& opts = {}, const Tolerances& tol = {});

/// Negative pair (epsilon = -1, tau != 0).
/// Entries: beta_f_consistency, f_beta_alignment, H_beta_alignment, and for
/// twin pairs also caseA_2fH_tau. Flags the degenerate branch A = sigma A*.
AuditReport audit_negative_pair(const PairData& pair, const AuditOptions& opts = {}, const Tolerances& tol = {});

/// Functional-dependence defect of f on g: |f_s g_t - f_t g_s| / max(|grad f| |grad g|, 1).
RealField alignment_defect(const RealField& f, const RealField& g, const Chart& chart);

/// Integrate a real potential from its gradient by quadrature along the
/// first row then up every column; value 0 at the (s_min, t_min) corner.
RealField integrate_gradient(const RealField& fs, const RealField& ft, const Chart& chart);
ComplexField integrate_gradient(const ComplexField& fs, const ComplexField& ft, const Chart& chart);

/// CSV: identity,max,rms,tol,pass
void write_csv(std::ostream& out, const AuditReport& report);

}  // namespace bcv
