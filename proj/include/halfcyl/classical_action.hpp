#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "halfcyl/exact.hpp"
#include "halfcyl/lie_core.hpp"
#include "halfcyl/mode_series.hpp"

namespace halfcyl {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Representative of an angle in [0, 2 pi).
double reduce_angle(double phi);
/// Difference a - b of two angles, mapped into (-pi, pi].
double angle_difference(double a, double b);

/// Point of the half-cylinder S^1 x R^+ with symplectic form dphi ^ dp.
class PhasePoint
{
public:
  /// Throws DomainError unless p > 0 and both coordinates are finite.
  PhasePoint(double phi, double p);

  double phi() const { return phi_; }
  double p() const { return p_; }

private:
  double phi_;
  double p_;
};

/// Element (gamma, omega) of the l-fold covering of SO^(1,2), |gamma| < 1 and
/// omega in [0, l pi).  As an SU(1,1) matrix: alpha = |alpha| e^{i omega},
/// |alpha| = (1 - |gamma|^2)^{-1/2}, beta = alpha gamma.
class CoveringElement
{
public:
  CoveringElement(std::complex<double> gamma, double omega, int l);

  static CoveringElement identity(int l) { return {0.0, 0.0, l}; }

  std::complex<double> gamma() const { return gamma_; }
  double omega() const { return omega_; }
  int l() const { return l_; }

  std::complex<double> alpha() const;
  std::complex<double> beta() const;
  /// [[alpha, beta], [conj beta, conj alpha]]; determined up to sign by (gamma, omega mod pi).
  Eigen::Matrix2cd su11_matrix() const;

  /// Product g * h with act(g * h, x) = act(g, act(h, x)).
  CoveringElement operator*(const CoveringElement& h) const;
  CoveringElement inverse() const;

private:
  std::complex<double> gamma_;
  double omega_;
  int l_;
};

/// Flow of the rotation generator T/l for parameter t: phi -> phi + t/l.
CoveringElement rotation_flow(double t, int l);

/// Base angle of g acting on phi, continued to the real line (no reduction mod 2 pi).
double lifted_angle(const CoveringElement& g, double phi);
PhasePoint act_lifted(const CoveringElement& g, const PhasePoint& x);

// ---------------------------------------------------------------------------
// Trigonometric polynomials  f(phi) = sum_j c_j e^{ij phi}  and momentum functions p f(phi).
// ---------------------------------------------------------------------------

using TrigPoly = ModeSeries<std::complex<double>>;

TrigPoly trig_const(double c);
TrigPoly trig_sin(int l, double amplitude = 1.0);
TrigPoly trig_cos(int l, double amplitude = 1.0);
TrigPoly trig_derivative(const TrigPoly& f);
TrigPoly trig_product(const TrigPoly& f, const TrigPoly& g);
std::complex<double> trig_eval(const TrigPoly& f, double phi);
/// Real-valuedness: c_{-j} = conj(c_j) within tol.
bool trig_is_real(const TrigPoly& f, double tol = 1e-14);

/// Zeros of a real trigonometric polynomial in [0, 2 pi), via companion-matrix
/// roots of z^{-lo} f on the unit circle, polished on the real line.
std::vector<double> trig_zeros(const TrigPoly& f);

/// The real vector field f(phi) d/dphi on S^1.
struct VectorField
{
  TrigPoly f;
};

/// Field bracket [f d/dphi, g d/dphi] = (f g' - g f') d/dphi.
VectorField field_bracket(const VectorField& a, const VectorField& b);

/// F(phi, p) = p f(phi), f a real trigonometric polynomial.
class MomentumFunction
{
public:
  MomentumFunction() = default;
  /// Throws DomainError if f is not real.
  explicit MomentumFunction(TrigPoly f);

  const TrigPoly& base() const { return f_; }
  double operator()(const PhasePoint& x) const;

  /// (dphi/dt, dp/dt) of the Hamiltonian flow, from dG/dt = {G, F}.
  std::pair<double, double> hamiltonian_field(double phi, double p) const;

  MomentumFunction operator+(const MomentumFunction& o) const { return MomentumFunction(f_ + o.f_); }
  MomentumFunction operator-(const MomentumFunction& o) const { return MomentumFunction(f_ - o.f_); }
  MomentumFunction operator*(double s) const { return MomentumFunction(f_ * std::complex<double>(s)); }
  bool operator==(const MomentumFunction& o) const { return f_ == o.f_; }

private:
  TrigPoly f_;
};

/// f d/dphi  ->  p f(phi).
MomentumFunction lift_hamiltonian(const VectorField& v);

/// {F, G} = dF/dphi dG/dp - dF/dp dG/dphi, i.e. {p f, p g} = p (f' g - f g').
MomentumFunction poisson_bracket(const MomentumFunction& F, const MomentumFunction& G);

/// Sign sigma with {lift X, lift Y} = sigma lift [X, Y] over pairs from
/// {d/dphi, sin(l phi) d/dphi, cos(l phi) d/dphi}; residual is the worst deviation.
struct MomentumSign
{
  int sigma = 0;
  double residual = 0.0;
};
MomentumSign measure_momentum_sign(int l = 1);

struct SymplecticCheck
{
  bool skipped = false;
  double residual = 0.0;
  Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
};

inline constexpr double kSymplecticStep = 1e-5;
inline constexpr double kSymplecticTol = 1e-6;

/// Central-difference Jacobian J of act_lifted(g, .) at x and max|J^T Omega J - Omega|.
/// Skipped when phi lies within 10 h of the 0 / 2 pi seam.
SymplecticCheck check_symplectic(const CoveringElement& g, const PhasePoint& x,
                                 double h = kSymplecticStep);

struct AdmissibilityReport
{
  int period_divisor = 0;
  std::optional<double> fixed_fiber;
  std::vector<double> fixed_fibers;
  bool transitive = false;
  bool sgp_pass = false;
};

/// Acceptance threshold for a common zero of the base fields.
inline constexpr double kRootResidualTol = 1e-10;

AdmissibilityReport admissibility_audit(const std::vector<MomentumFunction>& generators);

/// Witness of transitivity: rotation to phi_b followed by a boost fixing the fiber over phi_b.
CoveringElement transport(const PhasePoint& a, const PhasePoint& b, int l);

// ---------------------------------------------------------------------------
// Light-cone picture.
// ---------------------------------------------------------------------------

struct LightconePoint
{
  double x0 = 0.0, x1 = 0.0, x2 = 0.0;
  double interval() const { return x0 * x0 - x1 * x1 - x2 * x2; }
};

/// (x0, x1 + i x2) = (p, p e^{-il phi}).
LightconePoint lightcone_map(const PhasePoint& x, int l);
/// Inverse on sheet s (phi in [2 pi s / l, 2 pi (s+1) / l)). Throws DomainError
/// unless x0 > 0 and the point is null to relative tolerance 1e-9.
PhasePoint lightcone_inverse(const LightconePoint& y, int l, int sheet = 0);
/// Hermitian matrix [[x0, x1 - i x2], [x1 + i x2, x0]] and back.
Eigen::Matrix2cd lightcone_matrix(const LightconePoint& y);
LightconePoint lorentz_action(const Eigen::Matrix2cd& a, const LightconePoint& y);

// ---------------------------------------------------------------------------
// Auxiliary models: affine group on T*R^+ and C x| C^* on T*(R^2 \ {0}).
// ---------------------------------------------------------------------------

struct HalflinePoint
{
  double q = 1.0, p = 0.0;
};

/// (shift, scale): (q, p) -> (scale q, p / scale + shift).
struct AffineElement
{
  double shift = 0.0;
  double scale = 1.0;
  AffineElement operator*(const AffineElement& h) const;
};

/// Complex coordinates z = x + i y and P = p_x - i p_y, symplectic form Re(dz ^ dP).
struct PlanePoint
{
  std::complex<double> z{1.0, 0.0};
  std::complex<double> p{0.0, 0.0};
};

/// (alpha, beta): (z, P) -> (beta z, P / beta + alpha).
struct PlaneElement
{
  std::complex<double> alpha{0.0, 0.0};
  std::complex<double> beta{1.0, 0.0};
  PlaneElement operator*(const PlaneElement& h) const;
};

HalflinePoint act_auxiliary(const AffineElement& g, const HalflinePoint& x);
PlanePoint act_auxiliary(const PlaneElement& g, const PlanePoint& x);

/// Finite-difference max|J^T Omega J - Omega| for the auxiliary actions.
double symplectic_residual(const AffineElement& g, const HalflinePoint& x,
                           double h = kSymplecticStep);
double symplectic_residual(const PlaneElement& g, const PlanePoint& x, double h = kSymplecticStep);

/// Exact polynomial (Laurent in q) functions on T*R^+: sum c_{ab} q^a p^b.
class CanonicalPolynomial
{
public:
  using Key = std::pair<int, int>;

  static CanonicalPolynomial monomial(int qpow, int ppow, Rational c = 1);

  void add(Key k, const Rational& c);
  Rational coeff(int qpow, int ppow) const;
  const std::map<Key, Rational>& terms() const { return terms_; }
  double operator()(const HalflinePoint& x) const;

  CanonicalPolynomial operator+(const CanonicalPolynomial& o) const;
  bool operator==(const CanonicalPolynomial& o) const { return terms_ == o.terms_; }

private:
  std::map<Key, Rational> terms_;
};

/// {F, G} = dF/dq dG/dp - dF/dp dG/dq, exact.
CanonicalPolynomial poisson_bracket(const CanonicalPolynomial& F, const CanonicalPolynomial& G);

} // namespace halfcyl
