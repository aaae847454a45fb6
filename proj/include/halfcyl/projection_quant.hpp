#pragma once

#include <vector>

#include <Eigen/Dense>

#include "halfcyl/check_report.hpp"
#include "halfcyl/lie_core.hpp"

namespace halfcyl {

/// theta-quantization of T*S^1 on the window f_{theta,m}, m = -M..M.
/// Matrix index of mode m is m + M.
struct ThetaSpace
{
  double theta = 1.0;
  int M = 16;
  double hbar = 1.0;

  Eigen::MatrixXcd p;   ///< diag hbar (m + theta)
  Eigen::MatrixXcd U;   ///< f_m -> f_{m+1}
  Eigen::MatrixXcd sin; ///< -(i/2)(U - U*)
  Eigen::MatrixXcd cos; ///< (U + U*)/2

  int dim() const { return 2 * M + 1; }
  int index(int m) const { return m + M; }
};

/// Throws DomainError unless theta in (0, 1], M >= 8 and hbar > 0.
ThetaSpace build_theta_quantization(double theta, int M, double hbar);

/// Span of f_{theta,m}, m >= m_min, with the partial isometries pi and iota.
struct ProjectedSpace
{
  ThetaSpace parent;
  int m_min = 0;
  Eigen::MatrixXcd pi;   ///< (M - m_min + 1) x (2M + 1)
  Eigen::MatrixXcd iota; ///< pi^T

  int dim() const { return parent.M - m_min + 1; }
  /// pi O iota.
  Eigen::MatrixXcd project(const Eigen::MatrixXcd& parent_op) const;
  Eigen::MatrixXcd p() const { return project(parent.p); }
  Eigen::MatrixXcd U() const { return project(parent.U); }
  Eigen::MatrixXcd sin() const { return project(parent.sin); }
  Eigen::MatrixXcd cos() const { return project(parent.cos); }
};

/// Throws DomainError unless 0 <= m_min <= M/2.
ProjectedSpace project_positive(const ThetaSpace& space, int m_min);

/// {m : hbar (m + theta) > 0} within the window.
std::vector<int> positive_modes(const ThetaSpace& space);

/// Isometry of projected U, rank-one co-isometry defect, hermiticity of projected sin / cos,
/// partial-isometry identities, and unitarity of the parent on its interior.
CheckReport isometry_report(const ProjectedSpace& ps);

/// Identities of the parent window: p spectrum and [U, p] = -hbar U.
CheckReport theta_report(const ThetaSpace& space);

struct HalflineLevel
{
  int n_points = 0;
  double h = 0.0;
  double residual = 0.0;
};

/// Log-grid realisation of T*R^+ on x = ln q: q = e^x > 0, dilations are the cyclic shift,
/// and qp is the central difference -i hbar d/dx.  The commutator [q, qp] - i hbar q is
/// measured on a Gaussian at n, 2n and 4n points and the convergence order is reported.
struct HalflineResult
{
  CheckReport report;
  std::vector<HalflineLevel> levels;
  double order = 0.0;
};

/// Throws DomainError for n_points < 64, box_width <= 0 or hbar <= 0.
HalflineResult halfline_demo(int n_points, double box_width, double hbar);

} // namespace halfcyl
