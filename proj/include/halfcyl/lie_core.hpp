#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "halfcyl/exact.hpp"
#include "halfcyl/mode_series.hpp"

namespace halfcyl {

/// Raised for inputs outside an operation's domain (bad k, bad mode, ...).
class DomainError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Witt algebra.  L_j = -i e^{ij phi} d/dphi,   [L_j, L_k] = (k - j) L_{j+k}.
// ---------------------------------------------------------------------------

/// Exact Witt element (Gaussian-rational coefficients).
using WittElement = ModeSeries<GaussRational>;
/// Floating-point Witt element, used once an input is not rational.
using WittElementF = ModeSeries<std::complex<double>>;

template <typename Scalar>
ModeSeries<Scalar> witt_bracket(const ModeSeries<Scalar>& a, const ModeSeries<Scalar>& b)
{
  ModeSeries<Scalar> out;
  for (const auto& [j, aj] : a.coeffs())
    for (const auto& [k, bk] : b.coeffs())
      if (k != j)
        out.add(j + k, Scalar(static_cast<long long>(k - j)) * aj * bk);
  return out;
}

WittElementF to_float(const WittElement& w);

/// Default search caps for witt_closure.
inline constexpr int kDefaultModeBound = 64;
inline constexpr int kDefaultDimBound = 12;
/// Relative singular-value cut used for rank decisions on float inputs.
inline constexpr double kFloatRankThreshold = 1e-10;

template <typename Scalar>
struct ClosureResultT
{
  bool closed = false;
  /// Reduced echelon basis of the span reached (pivot = highest mode, coefficient 1).
  std::vector<ModeSeries<Scalar>> basis;
  /// Mode that escapes the generators' mode window; set only when !closed.
  std::optional<int> witness_mode;
  int rounds = 0;
  std::string reason;

  std::size_t dimension() const { return basis.size(); }
};

using ClosureResult = ClosureResultT<GaussRational>;
using ClosureResultF = ClosureResultT<std::complex<double>>;

/// Closes span(generators) under the bracket, one full round of pairwise
/// brackets at a time, so the reached span does not depend on generator order.
/// Exceeding mode_bound or dim_bound gives closed == false, never an exception.
ClosureResult witt_closure(const std::vector<WittElement>& generators,
                           int mode_bound = kDefaultModeBound,
                           int dim_bound = kDefaultDimBound);
ClosureResultF witt_closure(const std::vector<WittElementF>& generators,
                            int mode_bound = kDefaultModeBound,
                            int dim_bound = kDefaultDimBound);

/// True when x lies in span(basis). Exact.
bool in_span(const std::vector<WittElement>& basis, const WittElement& x);

// ---------------------------------------------------------------------------
// so(1,2):  [T0,T1] = T2,  [T0,T2] = -T1,  [T1,T2] = -T0.
// ---------------------------------------------------------------------------

struct So12Element
{
  std::array<double, 3> t{0.0, 0.0, 0.0};

  static So12Element basis(int i)
  {
    So12Element e;
    e.t.at(static_cast<std::size_t>(i)) = 1.0;
    return e;
  }

  So12Element operator+(const So12Element& o) const
  {
    return {{t[0] + o.t[0], t[1] + o.t[1], t[2] + o.t[2]}};
  }
  So12Element operator-(const So12Element& o) const
  {
    return {{t[0] - o.t[0], t[1] - o.t[1], t[2] - o.t[2]}};
  }
  So12Element operator*(double s) const { return {{s * t[0], s * t[1], s * t[2]}}; }
  double max_abs() const;
  bool operator==(const So12Element&) const = default;
};

So12Element so12_bracket(const So12Element& a, const So12Element& b);

/// Matrix of ad_a in the basis (T0, T1, T2).
Eigen::Matrix3d so12_ad(const So12Element& a);

/// tr(ad_i ad_j); equals 2 diag(-1, 1, 1).
Eigen::Matrix3d so12_killing_form();

enum class RealForm { sl2R, su11 };

/// 2x2 image of a under so(1,2) -> sl(2,R) or so(1,2) -> su(1,1).
Eigen::Matrix2cd algebra_isomorphism(RealForm target, const So12Element& a);

/// Translates a vector field t T + s S_l + c C_l (T = d/dphi, S_l = sin(l phi) d/dphi,
/// C_l = cos(l phi) d/dphi), given as a Witt element, into so(1,2) via
/// T/l -> T0, S_l/l -> T1, C_l/l -> T2. Throws DomainError naming the offending
/// mode when v leaves that real span.
So12Element vector_field_to_so12(int l, const WittElementF& v);
So12Element vector_field_to_so12(int l, const WittElement& v);

/// Witt images of the real vector fields d/dphi, sin(l phi) d/dphi, cos(l phi) d/dphi.
WittElement witt_T();
WittElement witt_S(int l);
WittElement witt_C(int l);

/// Parses "L-1 + 2*L1 - 1/2*L0" style expressions (rational coefficients only).
WittElement parse_witt(const std::string& text);
/// Parses a comma-separated generator list, e.g. "L-1,L0,L1".
std::vector<WittElement> parse_witt_list(const std::string& text);

} // namespace halfcyl
