#include "halfcyl/equivalence.hpp"

#include <cmath>

namespace halfcyl {

namespace {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
const C I(0.0, 1.0);

int N_of(const Identification& id) { return static_cast<int>(id.basis_map.size()) - 1; }

// The theta window holding modes m_min .. m_min + N, as required by basis_map.
ProjectedSpace window(const Identification& id, double hbar)
{
  const int N = N_of(id);
  if (N < id.m_min)
    throw DomainError("cutoff N must be at least m_min");
  const int M = std::max(8, N + id.m_min);
  return project_positive(build_theta_quantization(id.theta, M, hbar), id.m_min);
}

// B(n, m - m_min) = 1 for m = basis_map[n].
Mat basis_matrix(const Identification& id, int cols)
{
  const int N = N_of(id);
  Mat B = Mat::Zero(N + 1, cols);
  for (int n = 0; n <= N; ++n)
    B(n, id.basis_map[n] - id.m_min) = 1.0;
  return B;
}

} // namespace

Identification identify(double theta, int m_min, int N)
{
  if (!(theta > 0.0 && theta <= 1.0))
    throw DomainError("theta must lie in (0, 1]");
  if (m_min < 0)
    throw DomainError("m_min must be nonnegative");
  if (N < 0)
    throw DomainError("N must be nonnegative");
  Identification id;
  id.theta = theta;
  id.m_min = m_min;
  id.k = theta + m_min;
  for (int n = 0; n <= N; ++n)
    id.basis_map.push_back(n + m_min);
  return id;
}

TruncatedOperator phase_operator(const GeneratorSet& gs)
{
  if (!(gs.config.k > 0.0))
    throw DomainError("phase operator needs k > 0");
  const int N = gs.config.N;
  const Mat a = (gs.Tminus * gs.Tplus).entries;
  const double scale = a.cwiseAbs().maxCoeff();
  Mat off = a;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("T- T+ is not diagonal; no spectral root");
  Mat root = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n) {
    const double v = a(n, n).real();
    if (!(v > 0.0) || std::abs(a(n, n).imag()) > 1e-12 * scale)
      throw DomainError("T- T+ is not positive; no inverse root");
    root(n, n) = 1.0 / std::sqrt(v);
  }
  return {gs.Tplus.entries * root, 1};
}

CheckReport phase_report(const TruncatedOperator& u, double tol)
{
  const int N = u.N();
  const Mat id = Mat::Identity(N + 1, N + 1);
  Mat P0 = Mat::Zero(N + 1, N + 1);
  P0(0, 0) = 1.0;
  const auto uu = u.adjoint() * u;
  const auto vv = u * u.adjoint();
  CheckReport r;
  r.check("phase_isometry", "U* U = 1", interior_residual(uu, id), tol);
  r.check("phase_coisometry", "U U* = 1 - P_0", interior_residual(vv, id - P0), tol);
  return r;
}

TruncatedOperator tplus_from_phase(const GeneratorSet& gs, const TruncatedOperator& uhat)
{
  const int N = gs.config.N;
  if (uhat.N() != N)
    throw DomainError("phase operator and generators have different cutoffs");
  const double k = gs.config.k;
  const double hbar = gs.config.hbar;
  Mat F = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    const double p = hbar * gs.H.entries(n, n).real();
    // (p + (k-1) hbar)(p - k hbar) >= 0 on the spectrum; clamp the rounding at the ground state.
    F(n, n) = std::sqrt(std::max(0.0, (p + (k - 1.0) * hbar) * (p - k * hbar)));
  }
  const double sign = gs.config.phase_convention == PhaseConvention::disc_minus ? -1.0 : 1.0;
  return {(sign / hbar) * F * uhat.entries, uhat.reach};
}

SinCos sincos_operators(const GeneratorSet& gs, double tol)
{
  const TruncatedOperator u = phase_operator(gs);
  const TruncatedOperator ua = u.adjoint();
  SinCos out;
  out.sin = (u - ua) * (-0.5 * I);
  out.cos = (u + ua) * 0.5;
  const auto& s = out.sin;
  const auto& c = out.cos;

  const int N = gs.config.N;
  const Mat id = Mat::Identity(N + 1, N + 1);
  Mat P0 = Mat::Zero(N + 1, N + 1);
  P0(0, 0) = 1.0;
  auto& r = out.report;
  r.check("sin_hermitean", "sin = sin*", (s.entries - s.entries.adjoint()).cwiseAbs().maxCoeff(), tol);
  r.check("cos_hermitean", "cos = cos*", (c.entries - c.entries.adjoint()).cwiseAbs().maxCoeff(), tol);
  r.check("sin2_plus_cos2", "sin^2 + cos^2 = 1 - P_0/2", interior_residual(s * s + c * c, id - 0.5 * P0),
          tol);
  r.check("sin_cos_commutator", "[sin, cos] = (i/2) P_0", interior_residual(commutator(s, c), 0.5 * I * P0),
          tol);
  r.check("H_sin", "[H, sin] = -i cos", interior_residual(commutator(gs.H, s), -I * c.entries), tol);
  r.check("H_cos", "[H, cos] = i sin", interior_residual(commutator(gs.H, c), I * s.entries), tol);
  // c + i s is U itself, so the best it can do is isometric.
  const auto w = c + s * I;
  const auto ww = w * w.adjoint();
  r.check("isometry_ceiling", "(cos + i sin)(cos + i sin)* = 1 - P_0", interior_residual(ww, id - P0), tol);
  r.report("unitarity_defect", "|| (cos + i sin)(cos + i sin)* - 1 ||",
           (ww.entries - id).leftCols(ww.interior_end() + 1).cwiseAbs().maxCoeff());
  return out;
}

CheckReport conjugate_realizations(const RepConfig& config, double tol)
{
  const auto b = build_generators(Realization::boundary, config);
  const auto h = build_generators(Realization::hardy, config);
  const auto c = normalisation_constants(config);
  const int N = config.N;
  Mat D = Mat::Zero(N + 1, N + 1);
  Mat Dinv = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    D(n, n) = c[n];
    Dinv(n, n) = 1.0 / c[n];
  }
  CheckReport r;
  auto conj = [&](const char* name, const TruncatedOperator& bo, const TruncatedOperator& ho) {
    const TruncatedOperator mapped{Dinv * bo.entries * D, bo.reach};
    r.check(std::string("conjugate_") + name, std::string("D^-1 ") + name + "_boundary D = " + name + "_hardy",
            interior_residual(mapped, ho.entries), tol);
  };
  conj("H", b.H, h.H);
  conj("T+", b.Tplus, h.Tplus);
  conj("T-", b.Tminus, h.Tminus);
  conj("T1", b.T1, h.T1);
  conj("T2", b.T2, h.T2);
  r.check("T0_invariant", "T0_boundary = T0_hardy", (b.T0.entries - h.T0.entries).cwiseAbs().maxCoeff(), tol);

  double dev = 0.0;
  for (double x : c)
    dev = std::max(dev, std::abs(x - 1.0));
  if (config.k == 0.5)
    r.check("identity_similarity", "D = 1 at k = 1/2", dev, 0.0);
  else
    r.report("similarity_deviation", "max |c_n - 1|", dev);
  return r;
}

TruncatedOperator projection_phase(const Identification& id, double hbar)
{
  const auto ps = window(id, hbar);
  const Mat B = basis_matrix(id, ps.dim());
  return {B * ps.U() * B.transpose(), 1};
}

CheckReport diagram_report(double theta, int m_min, int N, double hbar)
{
  const Identification id = identify(theta, m_min, N);
  const auto ps = window(id, hbar);
  const Mat B = basis_matrix(id, ps.dim());
  const RepConfig cfg{id.k, N, hbar, PhaseConvention::creation_plus};
  const auto gs = build_generators(Realization::fock, cfg);

  CheckReport r;
  const auto proj_u = projection_phase(id, hbar);
  const auto ladder_u = phase_operator(gs);
  r.append(phase_report(proj_u), "projection_");
  r.append(phase_report(ladder_u), "ladder_");
  r.check("diagram_phase", "B U_projected = T+ (T- T+)^{-1/2} B",
          interior_residual(proj_u.entries, ladder_u.entries, N - 1), 1e-12);

  const Mat proj_p = B * ps.p() * B.transpose();
  const Mat ladder_p = hbar * gs.H.entries;
  r.check("diagram_momentum", "B p_projected = hbar H B",
          (proj_p - ladder_p).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, hbar * (id.k + N)));
  return r;
}

} // namespace halfcyl
