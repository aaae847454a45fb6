#pragma once

#include <vector>

#include "halfcyl/check_report.hpp"
#include "halfcyl/projection_quant.hpp"
#include "halfcyl/quantum_rep.hpp"

namespace halfcyl {

/// k = theta + m_min, with f_{theta, n + m_min} <-> e_n.
struct Identification
{
  double theta = 1.0;
  int m_min = 0;
  double k = 1.0;
  /// basis_map[n] = m, the theta-mode matched with e_n.
  std::vector<int> basis_map;
};

/// Throws DomainError unless theta in (0, 1] and m_min >= 0.  basis_map covers n = 0..N.
Identification identify(double theta, int m_min, int N = 64);

/// T+ (T- T+)^{-1/2}, the root taken entrywise on the diagonal of T- T+.
/// Column N is left empty (T+ e_N leaves the truncation); reach 1.
/// Throws DomainError if T- T+ is not diagonal or not positive on columns 0..N-1.
TruncatedOperator phase_operator(const GeneratorSet& gs);

/// U* U = 1 and U U* = 1 - P_0 on the interior.
CheckReport phase_report(const TruncatedOperator& uhat, double tol = 1e-12);

/// sign * hbar^{-1} sqrt((p + (k-1) hbar)(p - k hbar)) uhat with p = hbar H, where uhat is the
/// unit shift of the projection picture and sign is -1 for disc_minus, +1 for creation_plus.
TruncatedOperator tplus_from_phase(const GeneratorSet& gs, const TruncatedOperator& uhat);

struct SinCos
{
  TruncatedOperator sin;
  TruncatedOperator cos;
  CheckReport report;
};

/// sin = -(i/2)(U - U*), cos = (U + U*)/2 from phase_operator(gs), with their identities.
SinCos sincos_operators(const GeneratorSet& gs, double tol = 1e-10);

/// diag(c_n) similarity between boundary and hardy generators: hardy = D^{-1} boundary D.
CheckReport conjugate_realizations(const RepConfig& config, double tol);

/// Projection picture at (theta, m_min) against the ladder picture at k = theta + m_min:
/// projected U and p agree with phase_operator and hbar H under basis_map.
CheckReport diagram_report(double theta, int m_min, int N, double hbar);

/// Projected U of the theta window, moved onto e_0..e_N through basis_map (reach 1).
TruncatedOperator projection_phase(const Identification& id, double hbar);

} // namespace halfcyl
