#include "halfcyl/quantum_rep.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace halfcyl {

namespace {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
const C I(0.0, 1.0);

// e^{i phi} on the Fourier / monomial index: e_n -> e_{n+1}.
Mat raise(int N)
{
  Mat e = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n)
    e(n + 1, n) = 1.0;
  return e;
}

Mat number(int N)
{
  Mat d = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    d(n, n) = n;
  return d;
}

// Fills T0, T1, T2 and C from H and the ladder pair.
void complete(GeneratorSet& gs)
{
  gs.T0 = gs.H * I;
  gs.T1 = (gs.Tplus - gs.Tminus) * 0.5;
  gs.T2 = (gs.Tplus + gs.Tminus) * (0.5 * I);
  gs.C = casimir(gs);
}

// Monomial zbar^n: H = k + zbar d, T+ = -(2k zbar + zbar^2 d), T- = -d.
// Each operator is applied to a coefficient vector of a polynomial in zbar.
using Poly = Eigen::VectorXcd;

Poly apply_disc(const std::string& which, double k, const Poly& f)
{
  const int N = static_cast<int>(f.size()) - 1;
  Poly d = Poly::Zero(N + 1); // f'
  for (int n = 1; n <= N; ++n)
    d(n - 1) = static_cast<double>(n) * f(n);
  Poly out = Poly::Zero(N + 1);
  if (which == "H") {
    out = k * f;
    for (int n = 1; n <= N; ++n)
      out(n) += d(n - 1);
  } else if (which == "T+") {
    for (int n = 0; n < N; ++n)
      out(n + 1) -= 2.0 * k * f(n);
    for (int n = 0; n + 2 <= N; ++n)
      out(n + 2) -= d(n);
  } else {
    out = -d;
  }
  return out;
}

Mat disc_matrix(const std::string& which, double k, int N)
{
  Mat m = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    m.col(n) = apply_disc(which, k, Poly::Unit(N + 1, n));
  return m;
}

Mat as_diagonal(const std::vector<double>& v)
{
  Mat d = Mat::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
  return d;
}

GeneratorSet fock(const RepConfig& cfg)
{
  const int N = cfg.N;
  const double omega = cfg.phase_convention == PhaseConvention::creation_plus ? 1.0 : -1.0;
  GeneratorSet gs;
  gs.H = {Mat::Zero(N + 1, N + 1), 0};
  gs.Tplus = {Mat::Zero(N + 1, N + 1), 1};
  for (int n = 0; n <= N; ++n)
    gs.H.entries(n, n) = cfg.k + n;
  for (int n = 0; n < N; ++n)
    gs.Tplus.entries(n + 1, n) = omega * std::sqrt((2.0 * cfg.k + n) * (n + 1.0));
  gs.Tminus = gs.Tplus.adjoint();
  return gs;
}

// Native sign of disc, boundary and hardy is disc_minus.
void apply_convention(GeneratorSet& gs, const RepConfig& cfg)
{
  if (cfg.phase_convention == PhaseConvention::disc_minus)
    return;
  const Mat s = convention_similarity(cfg.N);
  gs.Tplus.entries = s * gs.Tplus.entries * s;
  gs.Tminus.entries = s * gs.Tminus.entries * s;
}

GeneratorSet disc(const RepConfig& cfg)
{
  const int N = cfg.N;
  Mat D = as_diagonal(normalisation_constants(cfg));
  Mat Dinv = D.inverse();
  GeneratorSet gs;
  gs.H = {Dinv * disc_matrix("H", cfg.k, N) * D, 0};
  gs.Tplus = {Dinv * disc_matrix("T+", cfg.k, N) * D, 1};
  gs.Tminus = {Dinv * disc_matrix("T-", cfg.k, N) * D, 1};
  apply_convention(gs, cfg);
  return gs;
}

GeneratorSet boundary(const RepConfig& cfg)
{
  const int N = cfg.N;
  const Mat E = raise(N);
  const Mat dphi = number(N) * I;
  const Mat id = Mat::Identity(N + 1, N + 1);
  GeneratorSet gs;
  gs.Tplus = {E * (-2.0 * cfg.k * id + I * dphi), 1};
  gs.Tminus = {E.transpose() * (I * dphi), 1};
  gs.H = {-I * (dphi + I * cfg.k * id), 0};
  apply_convention(gs, cfg);
  return gs;
}

GeneratorSet hardy(const RepConfig& cfg)
{
  const int N = cfg.N;
  const Mat E = raise(N);
  const Mat nhat = number(N);
  const Mat id = Mat::Identity(N + 1, N + 1);
  // (2k - i d/dphi)(1 - i d/dphi) is diagonal and positive; take its entrywise root.
  const Mat factor = (2.0 * cfg.k * id + nhat) * (id + nhat);
  Mat root = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    root(n, n) = std::sqrt(factor(n, n).real());
  GeneratorSet gs;
  gs.H = {cfg.k * id + nhat, 0};
  gs.Tplus = {-(E * root), 1};
  gs.Tminus = {-(root * E.transpose()), 1};
  apply_convention(gs, cfg);
  return gs;
}

} // namespace

std::string to_string(Realization r)
{
  switch (r) {
  case Realization::fock: return "fock";
  case Realization::disc: return "disc";
  case Realization::boundary: return "boundary";
  case Realization::hardy: return "hardy";
  }
  return "?";
}

std::string to_string(PhaseConvention c)
{
  return c == PhaseConvention::creation_plus ? "creation_plus" : "disc_minus";
}

Realization parse_realization(const std::string& s)
{
  for (auto r : {Realization::fock, Realization::disc, Realization::boundary, Realization::hardy})
    if (to_string(r) == s)
      return r;
  throw DomainError("unknown realization '" + s + "'");
}

PhaseConvention parse_convention(const std::string& s)
{
  if (s == "creation_plus")
    return PhaseConvention::creation_plus;
  if (s == "disc_minus")
    return PhaseConvention::disc_minus;
  throw DomainError("unknown phase convention '" + s + "'");
}

void RepConfig::validate() const
{
  if (!(k > 0.0) || !std::isfinite(k))
    throw DomainError("k must be positive (D^k is unitary only for k > 0)");
  if (N < 4)
    throw DomainError("N must be at least 4");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw DomainError("hbar must be positive");
}

double default_tol(int N) { return 1e-9 * std::max(1, N); }

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b)
{
  return a * b - b * a;
}

double interior_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int last_col)
{
  if (last_col < 0)
    return 0.0;
  return (a - b).leftCols(last_col + 1).cwiseAbs().maxCoeff();
}

double interior_residual(const TruncatedOperator& a, const Eigen::MatrixXcd& b)
{
  return interior_residual(a.entries, b, a.interior_end());
}

GeneratorSet build_generators(Realization realization, const RepConfig& config)
{
  config.validate();
  GeneratorSet gs;
  switch (realization) {
  case Realization::fock: gs = fock(config); break;
  case Realization::disc: gs = disc(config); break;
  case Realization::boundary: gs = boundary(config); break;
  case Realization::hardy: gs = hardy(config); break;
  }
  gs.realization = realization;
  gs.config = config;
  complete(gs);
  return gs;
}

TruncatedOperator casimir(const GeneratorSet& gs)
{
  return gs.T0 * gs.T0 - gs.T1 * gs.T1 - gs.T2 * gs.T2;
}

std::vector<double> spectrum_p(const RepConfig& config)
{
  config.validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(config.N) + 1);
  for (int n = 0; n <= config.N; ++n)
    out.push_back(config.hbar * (config.k + n));
  return out;
}

TruncatedOperator rotation_rep(double omega, const RepConfig& config)
{
  config.validate();
  Mat d = Mat::Zero(config.N + 1, config.N + 1);
  for (int n = 0; n <= config.N; ++n)
    d(n, n) = std::exp(C(0.0, -2.0 * omega * (config.k + n)));
  return {d, 0};
}

Direction parse_direction(const std::string& s)
{
  if (s == "T0")
    return Direction::T0;
  if (s == "T1")
    return Direction::T1;
  if (s == "T2")
    return Direction::T2;
  throw DomainError("unknown direction '" + s + "'");
}

namespace {

const TruncatedOperator& pick(const GeneratorSet& gs, Direction d)
{
  switch (d) {
  case Direction::T0: return gs.T0;
  case Direction::T1: return gs.T1;
  default: return gs.T2;
  }
}

} // namespace

TruncatedOperator exp_generator(Direction direction, double t, const RepConfig& config)
{
  if (direction != Direction::T0 && std::abs(t) > 2.0)
    throw DomainError("boost parameter |t| must not exceed 2");
  const GeneratorSet gs = build_generators(Realization::fock, config);
  if (direction == Direction::T0) {
    // Diagonal: exponentiate the spectrum directly.
    Mat d = Mat::Zero(config.N + 1, config.N + 1);
    for (int n = 0; n <= config.N; ++n)
      d(n, n) = std::exp(C(0.0, t * (config.k + n)));
    return {d, 0};
  }
  const Mat m = pick(gs, direction).entries * t;
  return {m.exp(), config.N};
}

ExpAudit exp_audit(Direction direction, double t, const RepConfig& config)
{
  const GeneratorSet gs = build_generators(Realization::fock, config);
  const int low = config.N / 4;
  const double h = 1e-3;
  auto U = [&](double s) { return exp_generator(direction, s, config).entries; };
  const Mat deriv = (45.0 * (U(h) - U(-h)) - 9.0 * (U(2 * h) - U(-2 * h)) + (U(3 * h) - U(-3 * h))) /
                    (60.0 * h);
  ExpAudit out;
  out.derivative_residual = (deriv - pick(gs, direction).entries)
                                .topLeftCorner(low + 1, low + 1)
                                .cwiseAbs()
                                .maxCoeff();
  const Mat u = U(t);
  const Mat defect = u.adjoint() * u - Mat::Identity(config.N + 1, config.N + 1);
  out.interior_unitarity_defect = defect.leftCols(config.N / 2 + 1).cwiseAbs().maxCoeff();
  return out;
}

Eigen::MatrixXcd convention_similarity(int N)
{
  Mat s = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    s(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return s;
}

std::vector<double> gram_weights(const RepConfig& config)
{
  config.validate();
  const double a = std::lgamma(2.0 * config.k);
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(config.N) + 1);
  for (int n = 0; n <= config.N; ++n)
    w.push_back(std::exp(a + std::lgamma(n + 1.0) - std::lgamma(2.0 * config.k + n)));
  return w;
}

std::vector<double> normalisation_constants(const RepConfig& config)
{
  auto w = gram_weights(config);
  for (auto& x : w)
    x = 1.0 / std::sqrt(x);
  return w;
}

bool toeplitz_measure_test(const RepConfig& config)
{
  const auto w = gram_weights(config);
  for (double x : w)
    if (std::abs(x - w.front()) > 1e-12)
      return false;
  return true;
}

CheckReport generator_report(const GeneratorSet& gs, double tol, double casimir_tol)
{
  const int N = gs.config.N;
  const double k = gs.config.k;
  const Mat id = Mat::Identity(N + 1, N + 1);
  CheckReport r;
  r.check("ladder_H_Tplus", "[H,T+] = T+", interior_residual(commutator(gs.H, gs.Tplus), gs.Tplus.entries),
          tol);
  r.check("ladder_H_Tminus", "[H,T-] = -T-",
          interior_residual(commutator(gs.H, gs.Tminus), -gs.Tminus.entries), tol);
  r.check("ladder_Tplus_Tminus", "[T+,T-] = -2H",
          interior_residual(commutator(gs.Tplus, gs.Tminus), -2.0 * gs.H.entries), tol);
  r.check("so12_T0_T1", "[T0,T1] = T2", interior_residual(commutator(gs.T0, gs.T1), gs.T2.entries), tol);
  r.check("so12_T0_T2", "[T0,T2] = -T1", interior_residual(commutator(gs.T0, gs.T2), -gs.T1.entries),
          tol);
  r.check("so12_T1_T2", "[T1,T2] = -T0", interior_residual(commutator(gs.T1, gs.T2), -gs.T0.entries),
          tol);

  // Boundary vectors are not orthonormal; the adjoint is taken in the Gram metric.
  Mat adj = gs.Tplus.entries.adjoint();
  if (gs.realization == Realization::boundary) {
    const Mat G = as_diagonal(gram_weights(gs.config));
    adj = G.inverse() * adj * G;
  }
  r.check("adjointness", "T- = (T+)^*", interior_residual(gs.Tminus.entries, adj, N - 1), tol);
  r.check("casimir", "T0^2 - T1^2 - T2^2 = k(1-k)", interior_residual(gs.C, k * (1.0 - k) * id),
          casimir_tol < 0.0 ? tol : casimir_tol);
  return r;
}

} // namespace halfcyl
