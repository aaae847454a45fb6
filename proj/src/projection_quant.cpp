#include "halfcyl/projection_quant.hpp"

#include <cmath>

namespace halfcyl {

namespace {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
const C I(0.0, 1.0);

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace

ThetaSpace build_theta_quantization(double theta, int M, double hbar)
{
  if (!(theta > 0.0 && theta <= 1.0))
    throw DomainError("theta must lie in (0, 1]");
  if (M < 8)
    throw DomainError("window half-width M must be at least 8");
  if (!(hbar > 0.0))
    throw DomainError("hbar must be positive");

  ThetaSpace s;
  s.theta = theta;
  s.M = M;
  s.hbar = hbar;
  const int d = s.dim();
  s.p = Mat::Zero(d, d);
  s.U = Mat::Zero(d, d);
  for (int m = -M; m <= M; ++m) {
    s.p(s.index(m), s.index(m)) = hbar * (m + theta);
    if (m < M)
      s.U(s.index(m + 1), s.index(m)) = 1.0;
  }
  s.sin = -0.5 * I * (s.U - s.U.adjoint());
  s.cos = 0.5 * (s.U + s.U.adjoint());
  return s;
}

Eigen::MatrixXcd ProjectedSpace::project(const Eigen::MatrixXcd& parent_op) const
{
  return pi * parent_op * iota;
}

ProjectedSpace project_positive(const ThetaSpace& space, int m_min)
{
  if (m_min < 0 || 2 * m_min > space.M)
    throw DomainError("m_min must satisfy 0 <= m_min <= M/2");
  ProjectedSpace ps;
  ps.parent = space;
  ps.m_min = m_min;
  ps.pi = Mat::Zero(ps.dim(), space.dim());
  for (int m = m_min; m <= space.M; ++m)
    ps.pi(m - m_min, space.index(m)) = 1.0;
  ps.iota = ps.pi.transpose();
  return ps;
}

std::vector<int> positive_modes(const ThetaSpace& space)
{
  std::vector<int> out;
  for (int m = -space.M; m <= space.M; ++m)
    if (space.p(space.index(m), space.index(m)).real() > 0.0)
      out.push_back(m);
  return out;
}

CheckReport theta_report(const ThetaSpace& s)
{
  CheckReport r;
  double spec = 0.0;
  for (int m = -s.M; m <= s.M; ++m)
    spec = std::max(spec, std::abs(s.p(s.index(m), s.index(m)) - s.hbar * (m + s.theta)));
  r.check("theta_p_spectrum", "p f_m = hbar (m + theta) f_m", spec, 0.0);
  r.check("theta_commutator", "[U, p] = -hbar U", max_abs(s.U * s.p - s.p * s.U + s.hbar * s.U), 1e-12);
  // The window edges are truncation artefacts; the parent is unitary in between.
  const int d = s.dim();
  const Mat id = Mat::Identity(d, d);
  r.check("parent_unitary", "U U* = U* U = 1 before projection",
          std::max(max_abs((s.U.adjoint() * s.U - id).block(1, 1, d - 2, d - 2)),
                   max_abs((s.U * s.U.adjoint() - id).block(1, 1, d - 2, d - 2))),
          0.0);
  return r;
}

CheckReport isometry_report(const ProjectedSpace& ps)
{
  CheckReport r;
  const int d = ps.dim();
  const int pd = ps.parent.dim();
  const Mat id = Mat::Identity(d, d);
  const Mat U = ps.U();
  // The last column is the window edge, so identities use columns 0 .. d-2.
  const int last = d - 2;

  r.check("projected_isometry", "U* U = 1", max_abs((U.adjoint() * U - id).leftCols(last + 1)), 1e-12);
  Mat ground = Mat::Zero(d, d);
  ground(0, 0) = 1.0;
  const Mat defect = id - U * U.adjoint();
  r.check("projected_coisometry", "U U* = 1 - P_{m_min}", max_abs((defect - ground).leftCols(last + 1)),
          1e-12);

  Eigen::JacobiSVD<Mat> svd(defect.topLeftCorner(last + 1, last + 1));
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    rank += svd.singularValues()(i) > 0.5;
  r.require("coisometry_defect_rank", "rank(1 - U U*) = 1 on the lowest state",
            rank == 1 && std::abs(defect(0, 0) - 1.0) < 1e-12);
  r.report("coisometry_defect_norm", "|| U U* - 1 ||", max_abs(defect.leftCols(last + 1)));

  r.check("projected_sin_hermitean", "sin = sin*", max_abs(ps.sin() - ps.sin().adjoint()), 0.0);
  r.check("projected_cos_hermitean", "cos = cos*", max_abs(ps.cos() - ps.cos().adjoint()), 0.0);

  Mat P = Mat::Zero(pd, pd);
  for (int m = ps.m_min; m <= ps.parent.M; ++m)
    P(ps.parent.index(m), ps.parent.index(m)) = 1.0;
  r.check("pi_iota", "pi iota = 1", max_abs(ps.pi * ps.iota - id), 0.0);
  r.check("iota_pi", "iota pi = P", max_abs(ps.iota * ps.pi - P), 0.0);

  const Mat p = ps.p();
  r.require("projected_p_positive", "projected p > 0", p.diagonal().real().minCoeff() > 0.0);

  if (ps.m_min == 0) {
    std::vector<int> expect;
    for (int m = 0; m <= ps.parent.M; ++m)
      expect.push_back(m);
    r.require("maximality", "{m : hbar (m + theta) > 0} = {m >= 0}", positive_modes(ps.parent) == expect);
  }
  return r;
}

namespace {

HalflineLevel halfline_level(int n, double box_width, double hbar, CheckReport* r)
{
  const double h = box_width / n;
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j)
    x(j) = -0.5 * box_width + j * h;

  Mat S = Mat::Zero(n, n); // (S psi)_j = psi_{j+1}, cyclic
  for (int j = 0; j < n; ++j)
    S(j, (j + 1) % n) = 1.0;
  const Mat Q = x.array().exp().matrix().cast<C>().asDiagonal();
  const Mat D = (-I * hbar / (2.0 * h)) * (S - S.transpose());

  Eigen::VectorXcd psi(n);
  for (int j = 0; j < n; ++j)
    psi(j) = std::exp(-0.5 * x(j) * x(j)) * std::exp(I * x(j));

  const Eigen::VectorXcd res = (Q * D - D * Q) * psi - I * hbar * (Q * psi);
  HalflineLevel lvl{n, h, res.segment(1, n - 2).cwiseAbs().maxCoeff()};

  if (r) {
    const Mat id = Mat::Identity(n, n);
    r->require("q_positive", "q = e^x > 0", x.array().exp().minCoeff() > 0.0);
    r->check("dilation_unitary", "dilation is exactly unitary", max_abs(S.adjoint() * S - id), 0.0);
    r->check("qp_hermitean", "-i hbar d/dx is hermitean on the periodic grid", max_abs(D - D.adjoint()),
             0.0);
    // -i hbar d/dq = e^{-x} (-i hbar d/dx) on the same grid; its hermiticity defect is reported only.
    const Mat Pq = x.array().exp().inverse().matrix().cast<C>().asDiagonal() * D;
    r->report("momentum_hermiticity_defect", "|| P - P* || / || P || for -i hbar d/dq",
              max_abs(Pq - Pq.adjoint()) / max_abs(Pq));
  }
  return lvl;
}

} // namespace

HalflineResult halfline_demo(int n_points, double box_width, double hbar)
{
  if (n_points < 64)
    throw DomainError("halfline_demo needs at least 64 grid points");
  if (!(box_width > 0.0) || !(hbar > 0.0))
    throw DomainError("box_width and hbar must be positive");
  HalflineResult out;
  for (int level = 0; level < 3; ++level)
    out.levels.push_back(halfline_level(n_points << level, box_width, hbar, level == 0 ? &out.report : nullptr));
  const double o1 = std::log2(out.levels[0].residual / out.levels[1].residual);
  const double o2 = std::log2(out.levels[1].residual / out.levels[2].residual);
  out.order = 0.5 * (o1 + o2);
  for (const auto& l : out.levels)
    out.report.report("commutator_residual_n" + std::to_string(l.n_points), "[q, qp] - i hbar q",
                      l.residual);
  out.report.report("order_first_refinement", "log2 of residual ratio", o1);
  out.report.report("order_second_refinement", "log2 of residual ratio", o2);
  out.report.check("commutator_order", "[q, qp] = i hbar q to second order", std::abs(out.order - 2.0), 0.2);
  return out;
}

} // namespace halfcyl
