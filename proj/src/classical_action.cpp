#include "halfcyl/classical_action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace halfcyl {

using cplx = std::complex<double>;

namespace {

constexpr cplx kI{0.0, 1.0};

double mod_positive(double x, double period)
{
  double r = std::fmod(x, period);
  if (r < 0.0)
    r += period;
  // fmod can return `period` itself after the correction above
  return r >= period ? 0.0 : r;
}

Eigen::Matrix2d standard_omega()
{
  Eigen::Matrix2d w;
  w << 0.0, 1.0, -1.0, 0.0;
  return w;
}

} // namespace

double reduce_angle(double phi) { return mod_positive(phi, kTwoPi); }

double angle_difference(double a, double b)
{
  double d = std::remainder(a - b, kTwoPi);
  return d <= -kPi ? d + kTwoPi : d;
}

PhasePoint::PhasePoint(double phi, double p) : phi_(reduce_angle(phi)), p_(p)
{
  if (!std::isfinite(phi) || !std::isfinite(p))
    throw DomainError("PhasePoint: coordinates must be finite");
  if (!(p > 0.0))
    throw DomainError("PhasePoint: momentum must be strictly positive, got " + std::to_string(p));
}

// ---------------------------------------------------------------------------

CoveringElement::CoveringElement(cplx gamma, double omega, int l)
    : gamma_(gamma), omega_(0.0), l_(l)
{
  if (l < 1)
    throw DomainError("CoveringElement: covering index l must be positive");
  if (!(std::abs(gamma) < 1.0))
    throw DomainError("CoveringElement: |gamma| must be < 1");
  if (!std::isfinite(omega))
    throw DomainError("CoveringElement: omega must be finite");
  omega_ = mod_positive(omega, l * kPi);
}

cplx CoveringElement::alpha() const
{
  return std::polar(1.0 / std::sqrt(1.0 - std::norm(gamma_)), omega_);
}

cplx CoveringElement::beta() const { return alpha() * gamma_; }

Eigen::Matrix2cd CoveringElement::su11_matrix() const
{
  const cplx a = alpha();
  const cplx b = beta();
  Eigen::Matrix2cd m;
  m << a, b, std::conj(b), std::conj(a);
  return m;
}

CoveringElement CoveringElement::operator*(const CoveringElement& h) const
{
  if (h.l_ != l_)
    throw DomainError("CoveringElement: cannot compose elements of different coverings");
  // alpha = a1 a2 + b1 conj(b2) = a1 a2 (1 + g1 conj(g2) e^{-2i w2}); the arg term is the
  // continuous lift (|g1 g2| < 1 keeps it inside (-pi/2, pi/2)).
  const cplx twist = std::polar(1.0, -2.0 * h.omega_);
  const cplx denom = 1.0 + gamma_ * std::conj(h.gamma_) * twist;
  const cplx gamma = (h.gamma_ + gamma_ * twist) / denom;
  const double omega = omega_ + h.omega_ + std::arg(denom);
  return {gamma, omega, l_};
}

CoveringElement CoveringElement::inverse() const
{
  return {-gamma_ * std::polar(1.0, 2.0 * omega_), -omega_, l_};
}

CoveringElement rotation_flow(double t, int l) { return {0.0, 0.5 * t, l}; }

double lifted_angle(const CoveringElement& g, double phi)
{
  const double l = g.l();
  const cplx w = 1.0 + g.gamma() * std::polar(1.0, -l * phi);
  // Re w > 0, so the principal arg is the continuous branch through gamma = 0.
  return phi + (2.0 * g.omega() + 2.0 * std::arg(w)) / l;
}

PhasePoint act_lifted(const CoveringElement& g, const PhasePoint& x)
{
  const cplx w = 1.0 + g.gamma() * std::polar(1.0, -g.l() * x.phi());
  const double p = x.p() * std::norm(w) / (1.0 - std::norm(g.gamma()));
  return {lifted_angle(g, x.phi()), p};
}

// ---------------------------------------------------------------------------

TrigPoly trig_const(double c) { return TrigPoly::mode(0, c); }

TrigPoly trig_sin(int l, double amplitude)
{
  // sin(l phi) = (e^{il phi} - e^{-il phi}) / (2i)
  TrigPoly f;
  f.add(l, -0.5 * kI * amplitude);
  f.add(-l, 0.5 * kI * amplitude);
  return f;
}

TrigPoly trig_cos(int l, double amplitude)
{
  TrigPoly f;
  f.add(l, 0.5 * amplitude);
  f.add(-l, 0.5 * amplitude);
  return f;
}

TrigPoly trig_derivative(const TrigPoly& f)
{
  TrigPoly d;
  for (const auto& [j, c] : f.coeffs())
    d.add(j, kI * static_cast<double>(j) * c);
  return d;
}

TrigPoly trig_product(const TrigPoly& f, const TrigPoly& g)
{
  TrigPoly out;
  for (const auto& [j, a] : f.coeffs())
    for (const auto& [k, b] : g.coeffs())
      out.add(j + k, a * b);
  return out;
}

cplx trig_eval(const TrigPoly& f, double phi)
{
  cplx s = 0.0;
  for (const auto& [j, c] : f.coeffs())
    s += c * std::polar(1.0, j * phi);
  return s;
}

bool trig_is_real(const TrigPoly& f, double tol)
{
  for (const auto& [j, c] : f.coeffs())
    if (std::abs(c - std::conj(f.coeff(-j))) > tol * std::max(1.0, std::abs(c)))
      return false;
  return true;
}

namespace {

double trig_scale(const TrigPoly& f)
{
  double s = 0.0;
  for (const auto& [j, c] : f.coeffs())
    s += std::abs(c);
  return s;
}

// Schroeder iteration (Newton on f / f'), quadratic also at multiple roots.
double polish_root(const TrigPoly& f, double phi)
{
  const TrigPoly d1 = trig_derivative(f);
  const TrigPoly d2 = trig_derivative(d1);
  for (int it = 0; it < 60; ++it) {
    const double v = trig_eval(f, phi).real();
    const double v1 = trig_eval(d1, phi).real();
    const double v2 = trig_eval(d2, phi).real();
    const double den = v1 * v1 - v * v2;
    if (v == 0.0 || den == 0.0)
      break;
    const double step = v * v1 / den;
    phi -= step;
    if (std::abs(step) < 1e-16)
      break;
  }
  return reduce_angle(phi);
}

void dedupe_angles(std::vector<double>& angles, double tol)
{
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || std::abs(angle_difference(a, out.back())) > tol)
      out.push_back(a);
  if (out.size() > 1 && std::abs(angle_difference(out.front(), out.back())) <= tol)
    out.pop_back();
  angles = std::move(out);
}

} // namespace

std::vector<double> trig_zeros(const TrigPoly& f)
{
  if (f.empty())
    throw DomainError("trig_zeros: the zero polynomial vanishes everywhere");
  const int lo = f.min_mode();
  const int degree = f.max_mode() - lo;
  if (degree == 0)
    return {};

  // P(z) = sum_j c_j z^{j - lo}; monic companion matrix.
  const cplx lead = f.coeff(f.max_mode());
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(degree, degree);
  for (int r = 1; r < degree; ++r)
    comp(r, r - 1) = 1.0;
  for (int r = 0; r < degree; ++r)
    comp(r, degree - 1) = -f.coeff(lo + r) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);

  const double scale = trig_scale(f);
  std::vector<double> zeros;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const cplx z = solver.eigenvalues()(i);
    // Multiple roots split off the circle by ~sqrt(eps); polishing decides.
    if (std::abs(std::abs(z) - 1.0) > 1e-5)
      continue;
    const double phi = polish_root(f, std::arg(z));
    if (std::abs(trig_eval(f, phi)) <= kRootResidualTol * scale)
      zeros.push_back(phi);
  }
  dedupe_angles(zeros, 1e-7);
  return zeros;
}

VectorField field_bracket(const VectorField& a, const VectorField& b)
{
  return {trig_product(a.f, trig_derivative(b.f)) - trig_product(b.f, trig_derivative(a.f))};
}

MomentumFunction::MomentumFunction(TrigPoly f) : f_(std::move(f))
{
  if (!trig_is_real(f_, 1e-12))
    throw DomainError("MomentumFunction: coefficients must satisfy c_{-j} = conj(c_j)");
}

double MomentumFunction::operator()(const PhasePoint& x) const
{
  return x.p() * trig_eval(f_, x.phi()).real();
}

std::pair<double, double> MomentumFunction::hamiltonian_field(double phi, double p) const
{
  // dphi/dt = {phi, F} = dF/dp,  dp/dt = {p, F} = -dF/dphi.
  return {trig_eval(f_, phi).real(), -p * trig_eval(trig_derivative(f_), phi).real()};
}

MomentumFunction lift_hamiltonian(const VectorField& v) { return MomentumFunction(v.f); }

MomentumFunction poisson_bracket(const MomentumFunction& F, const MomentumFunction& G)
{
  const TrigPoly& f = F.base();
  const TrigPoly& g = G.base();
  return MomentumFunction(trig_product(trig_derivative(f), g) - trig_product(f, trig_derivative(g)));
}

MomentumSign measure_momentum_sign(int l)
{
  const std::vector<VectorField> fields{{trig_const(1.0)}, {trig_sin(l)}, {trig_cos(l)}};
  MomentumSign out;
  double worst_plus = 0.0;
  double worst_minus = 0.0;
  for (const auto& x : fields)
    for (const auto& y : fields) {
      const TrigPoly pb = poisson_bracket(lift_hamiltonian(x), lift_hamiltonian(y)).base();
      const TrigPoly lifted = lift_hamiltonian(field_bracket(x, y)).base();
      auto worst = [&](double sign) {
        double w = 0.0;
        const TrigPoly gap = pb - lifted * cplx(sign);
        for (const auto& [j, c] : gap.coeffs())
          w = std::max(w, std::abs(c));
        return w;
      };
      worst_plus = std::max(worst_plus, worst(1.0));
      worst_minus = std::max(worst_minus, worst(-1.0));
    }
  out.sigma = worst_plus <= worst_minus ? 1 : -1;
  out.residual = std::min(worst_plus, worst_minus);
  return out;
}

SymplecticCheck check_symplectic(const CoveringElement& g, const PhasePoint& x, double h)
{
  SymplecticCheck out;
  if (x.phi() < 10.0 * h || x.phi() > kTwoPi - 10.0 * h) {
    out.skipped = true;
    return out;
  }
  // Divide by the realised step so that rounding in phi +- h cancels exactly.
  const double phi_hi = x.phi() + h;
  const double phi_lo = x.phi() - h;
  const double p_hi = x.p() + h;
  const double p_lo = x.p() - h;
  const auto a = act_lifted(g, {phi_hi, x.p()});
  const auto b = act_lifted(g, {phi_lo, x.p()});
  const auto c = act_lifted(g, {x.phi(), p_hi});
  const auto d = act_lifted(g, {x.phi(), p_lo});

  Eigen::Matrix2d& j = out.jacobian;
  j(0, 0) = angle_difference(a.phi(), b.phi()) / (phi_hi - phi_lo);
  j(1, 0) = (a.p() - b.p()) / (phi_hi - phi_lo);
  j(0, 1) = angle_difference(c.phi(), d.phi()) / (p_hi - p_lo);
  j(1, 1) = (c.p() - d.p()) / (p_hi - p_lo);
  const Eigen::Matrix2d w = standard_omega();
  out.residual = (j.transpose() * w * j - w).cwiseAbs().maxCoeff();
  return out;
}

AdmissibilityReport admissibility_audit(const std::vector<MomentumFunction>& generators)
{
  if (generators.empty())
    throw DomainError("admissibility_audit: generator list is empty");

  AdmissibilityReport rep;
  int divisor = 0;
  bool has_zero_mode = false;
  std::vector<const TrigPoly*> fields;
  for (const auto& g : generators) {
    for (const auto& [j, c] : g.base().coeffs()) {
      if (j == 0)
        has_zero_mode = true;
      else
        divisor = std::gcd(divisor, std::abs(j));
    }
    if (!g.base().empty())
      fields.push_back(&g.base());
  }
  rep.period_divisor = divisor;
  rep.sgp_pass = divisor == 1;

  if (fields.empty()) {
    // Every base field vanishes: all fibers are fixed.
    rep.fixed_fibers = {0.0};
  } else {
    std::vector<double> candidates;
    for (const auto* f : fields) {
      const auto z = trig_zeros(*f);
      candidates.insert(candidates.end(), z.begin(), z.end());
    }
    for (double phi : candidates) {
      // Polish on the field that is steepest here: a simple root when one exists.
      const TrigPoly* best = fields.front();
      double best_slope = -1.0;
      for (const auto* f : fields) {
        const double slope = std::abs(trig_eval(trig_derivative(*f), phi)) / trig_scale(*f);
        if (slope > best_slope) {
          best_slope = slope;
          best = f;
        }
      }
      const double root = polish_root(*best, phi);
      const bool common = std::all_of(fields.begin(), fields.end(), [&](const TrigPoly* f) {
        return std::abs(trig_eval(*f, root)) <= kRootResidualTol * trig_scale(*f);
      });
      if (common)
        rep.fixed_fibers.push_back(root);
    }
    dedupe_angles(rep.fixed_fibers, 1e-7);
  }
  if (!rep.fixed_fibers.empty())
    rep.fixed_fiber = rep.fixed_fibers.front();
  rep.transitive = rep.fixed_fibers.empty() && has_zero_mode;
  return rep;
}

CoveringElement transport(const PhasePoint& a, const PhasePoint& b, int l)
{
  // Rotation by phi_b - phi_a: phi -> phi + 2 omega / l.
  const double dphi = reduce_angle(b.phi() - a.phi());
  const CoveringElement rotation(0.0, 0.5 * l * dphi, l);
  // Boost with fixed points e^{il phi_b} and its antipode: alpha = cosh(t/2),
  // beta = sinh(t/2) e^{il phi_b}, so p -> p e^t on the fiber over phi_b.
  const double t = std::log(b.p() / a.p());
  const CoveringElement boost(std::tanh(0.5 * t) * std::polar(1.0, l * b.phi()), 0.0, l);
  return boost * rotation;
}

// ---------------------------------------------------------------------------

LightconePoint lightcone_map(const PhasePoint& x, int l)
{
  if (l < 1)
    throw DomainError("lightcone_map: l must be positive");
  const cplx w = std::polar(x.p(), -l * x.phi());
  return {x.p(), w.real(), w.imag()};
}

PhasePoint lightcone_inverse(const LightconePoint& y, int l, int sheet)
{
  if (l < 1)
    throw DomainError("lightcone_inverse: l must be positive");
  if (sheet < 0 || sheet >= l)
    throw DomainError("lightcone_inverse: sheet must lie in [0, l)");
  if (!(y.x0 > 0.0))
    throw DomainError("lightcone_inverse: x0 must be positive");
  if (std::abs(y.interval()) > 1e-9 * y.x0 * y.x0)
    throw DomainError("lightcone_inverse: point is not on the light cone");
  const double base = mod_positive(-std::atan2(y.x2, y.x1) / l, kTwoPi / l);
  return {base + kTwoPi * sheet / l, y.x0};
}

Eigen::Matrix2cd lightcone_matrix(const LightconePoint& y)
{
  Eigen::Matrix2cd x;
  x << y.x0, cplx(y.x1, -y.x2), cplx(y.x1, y.x2), y.x0;
  return x;
}

LightconePoint lorentz_action(const Eigen::Matrix2cd& a, const LightconePoint& y)
{
  const Eigen::Matrix2cd x = a * lightcone_matrix(y) * a.adjoint();
  return {x(0, 0).real(), x(1, 0).real(), x(1, 0).imag()};
}

// ---------------------------------------------------------------------------

AffineElement AffineElement::operator*(const AffineElement& h) const
{
  return {shift + h.shift / scale, scale * h.scale};
}

PlaneElement PlaneElement::operator*(const PlaneElement& h) const
{
  return {alpha + h.alpha / beta, beta * h.beta};
}

HalflinePoint act_auxiliary(const AffineElement& g, const HalflinePoint& x)
{
  if (!(g.scale > 0.0))
    throw DomainError("affine element: scale must be positive");
  if (!(x.q > 0.0))
    throw DomainError("T*R+ point: q must be positive");
  return {g.scale * x.q, x.p / g.scale + g.shift};
}

PlanePoint act_auxiliary(const PlaneElement& g, const PlanePoint& x)
{
  if (g.beta == 0.0)
    throw DomainError("plane element: beta must be nonzero");
  if (x.z == 0.0)
    throw DomainError("punctured-plane point: z must be nonzero");
  return {g.beta * x.z, x.p / g.beta + g.alpha};
}

double symplectic_residual(const AffineElement& g, const HalflinePoint& x, double h)
{
  Eigen::Matrix2d j;
  const double qh = x.q + h, ql = x.q - h, ph = x.p + h, pl = x.p - h;
  const auto a = act_auxiliary(g, {qh, x.p});
  const auto b = act_auxiliary(g, {ql, x.p});
  const auto c = act_auxiliary(g, {x.q, ph});
  const auto d = act_auxiliary(g, {x.q, pl});
  j << (a.q - b.q) / (qh - ql), (c.q - d.q) / (ph - pl), (a.p - b.p) / (qh - ql),
      (c.p - d.p) / (ph - pl);
  const Eigen::Matrix2d w = standard_omega();
  return (j.transpose() * w * j - w).cwiseAbs().maxCoeff();
}

double symplectic_residual(const PlaneElement& g, const PlanePoint& x, double h)
{
  // Real coordinates (x, y, p_x, p_y) with P = p_x - i p_y.
  auto to_real = [](const PlanePoint& s) {
    return Eigen::Vector4d(s.z.real(), s.z.imag(), s.p.real(), -s.p.imag());
  };
  auto from_real = [](const Eigen::Vector4d& v) {
    return PlanePoint{{v(0), v(1)}, {v(2), -v(3)}};
  };
  const Eigen::Vector4d base = to_real(x);
  Eigen::Matrix4d j;
  for (int c = 0; c < 4; ++c) {
    Eigen::Vector4d hi = base, lo = base;
    hi(c) += h;
    lo(c) -= h;
    j.col(c) = (to_real(act_auxiliary(g, from_real(hi))) - to_real(act_auxiliary(g, from_real(lo)))) /
               (hi(c) - lo(c));
  }
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  w.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  w.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  return (j.transpose() * w * j - w).cwiseAbs().maxCoeff();
}

CanonicalPolynomial CanonicalPolynomial::monomial(int qpow, int ppow, Rational c)
{
  CanonicalPolynomial out;
  out.add({qpow, ppow}, c);
  return out;
}

void CanonicalPolynomial::add(Key k, const Rational& c)
{
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Rational CanonicalPolynomial::coeff(int qpow, int ppow) const
{
  auto it = terms_.find({qpow, ppow});
  return it == terms_.end() ? Rational(0) : it->second;
}

double CanonicalPolynomial::operator()(const HalflinePoint& x) const
{
  double s = 0.0;
  for (const auto& [k, c] : terms_)
    s += c.convert_to<double>() * std::pow(x.q, k.first) * std::pow(x.p, k.second);
  return s;
}

CanonicalPolynomial CanonicalPolynomial::operator+(const CanonicalPolynomial& o) const
{
  CanonicalPolynomial out = *this;
  for (const auto& [k, c] : o.terms_)
    out.add(k, c);
  return out;
}

CanonicalPolynomial poisson_bracket(const CanonicalPolynomial& F, const CanonicalPolynomial& G)
{
  // {q^a p^b, q^c p^d} = (a d - b c) q^{a+c-1} p^{b+d-1}
  CanonicalPolynomial out;
  for (const auto& [kf, cf] : F.terms())
    for (const auto& [kg, cg] : G.terms()) {
      const auto [a, b] = kf;
      const auto [c, d] = kg;
      const int w = a * d - b * c;
      if (w != 0)
        out.add({a + c - 1, b + d - 1}, Rational(w) * cf * cg);
    }
  return out;
}

} // namespace halfcyl
