#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "halfcyl/check_report.hpp"
#include "halfcyl/lie_core.hpp"

namespace halfcyl {

enum class Realization { fock, disc, boundary, hardy };
/// Sign of the ladder coefficients: creation_plus has T+ >= 0 entrywise,
/// disc_minus has T+ e_n = -sqrt((2k+n)(n+1)) e_{n+1}.
enum class PhaseConvention { creation_plus, disc_minus };

std::string to_string(Realization r);
std::string to_string(PhaseConvention c);
Realization parse_realization(const std::string& s);
PhaseConvention parse_convention(const std::string& s);

struct RepConfig
{
  double k = 1.0;
  int N = 64;
  double hbar = 1.0;
  PhaseConvention phase_convention = PhaseConvention::creation_plus;

  /// Throws DomainError for k <= 0, N < 4 or hbar <= 0.
  void validate() const;
  int dim() const { return N + 1; }
};

/// Default identity tolerance 1e-9 * max(1, N).
double default_tol(int N);

/// Finite (N+1) x (N+1) shadow of an operator on span{e_0 .. e_N}.
/// Identities are only meaningful on columns n <= N - reach.
struct TruncatedOperator
{
  Eigen::MatrixXcd entries;
  int reach = 0;

  int N() const { return static_cast<int>(entries.cols()) - 1; }
  int interior_end() const { return N() - reach; }

  TruncatedOperator operator*(const TruncatedOperator& o) const
  {
    return {entries * o.entries, reach + o.reach};
  }
  TruncatedOperator operator+(const TruncatedOperator& o) const
  {
    return {entries + o.entries, std::max(reach, o.reach)};
  }
  TruncatedOperator operator-(const TruncatedOperator& o) const
  {
    return {entries - o.entries, std::max(reach, o.reach)};
  }
  TruncatedOperator operator*(std::complex<double> s) const { return {entries * s, reach}; }
  TruncatedOperator adjoint() const { return {entries.adjoint(), reach}; }
};

TruncatedOperator commutator(const TruncatedOperator& a, const TruncatedOperator& b);

/// max |a - b| over all rows and columns 0 .. last_col.
double interior_residual(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int last_col);
/// Same, with last_col = interior_end of a.
double interior_residual(const TruncatedOperator& a, const Eigen::MatrixXcd& b);

struct GeneratorSet
{
  TruncatedOperator H, Tplus, Tminus, T0, T1, T2, C;
  Realization realization = Realization::fock;
  RepConfig config;
};

/// fock: ladder formulas; disc: differential operators on zbar^n, normalised;
/// boundary: e^{i phi}(-2k + i d/dphi) on unnormalised e^{in phi};
/// hardy: diagonal spectral roots on orthonormal e^{in phi}.
GeneratorSet build_generators(Realization realization, const RepConfig& config);

/// T0^2 - T1^2 - T2^2 (reach 2).
TruncatedOperator casimir(const GeneratorSet& gs);

/// hbar (k + n), n = 0..N.
std::vector<double> spectrum_p(const RepConfig& config);

/// diag e^{-2i(k+n) omega}.
TruncatedOperator rotation_rep(double omega, const RepConfig& config);

enum class Direction { T0, T1, T2 };
Direction parse_direction(const std::string& s);

/// exp(t T_dir) of the fock generators.  Throws DomainError for boosts with |t| > 2.
TruncatedOperator exp_generator(Direction direction, double t, const RepConfig& config);

struct ExpAudit
{
  /// Sixth-order central difference at t = 0 against T_dir, on the block n <= N/4.
  double derivative_residual = 0.0;
  /// max |U*U - I| on the block n <= N/2.
  double interior_unitarity_defect = 0.0;
};
ExpAudit exp_audit(Direction direction, double t, const RepConfig& config);

/// Diagonal (-1)^n; maps creation_plus matrices to disc_minus ones by similarity.
Eigen::MatrixXcd convention_similarity(int N);

/// w_n = Gamma(2k) Gamma(n+1) / Gamma(2k+n).
std::vector<double> gram_weights(const RepConfig& config);
/// c_n = w_n^{-1/2}; c_n times the n-th monomial has unit norm.
std::vector<double> normalisation_constants(const RepConfig& config);

/// True iff the Gram matrix diag(w_n) of e^{in phi} is Toeplitz (all w_n equal).
bool toeplitz_measure_test(const RepConfig& config);

/// Ladder, so(1,2), adjointness and Casimir identities of one generator set.
/// casimir_tol < 0 means tol.
CheckReport generator_report(const GeneratorSet& gs, double tol, double casimir_tol = -1.0);

} // namespace halfcyl
