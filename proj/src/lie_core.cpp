#include "halfcyl/lie_core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace halfcyl {

Rational parse_rational(const std::string& text)
{
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(text));
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

WittElementF to_float(const WittElement& w)
{
  WittElementF out;
  for (const auto& [j, c] : w.coeffs())
    out.add(j, c.to_complex());
  return out;
}

namespace {

// Echelon bookkeeping shared by the exact and float closure searches. Each
// basis vector has a pivot (its highest mode) with coefficient 1, and no other
// basis vector carries that pivot mode.
template <typename Scalar>
struct Echelon
{
  std::vector<ModeSeries<Scalar>> rows;

  ModeSeries<Scalar> reduce(ModeSeries<Scalar> v) const
  {
    for (const auto& r : rows) {
      const Scalar c = v.coeff(r.max_mode());
      if (!is_zero(c))
        v -= r * c;
    }
    return v;
  }

  void insert(ModeSeries<Scalar> v)
  {
    const int pivot = v.max_mode();
    v *= Scalar(1) / v.coeff(pivot);
    for (auto& r : rows) {
      const Scalar c = r.coeff(pivot);
      if (!is_zero(c))
        r -= v * c;
    }
    rows.push_back(std::move(v));
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.max_mode() < b.max_mode(); });
  }
};

bool negligible(const WittElement& residual, const WittElement&, const std::vector<WittElement>&)
{
  return residual.empty();
}

WittElementF prune(const WittElementF& v, double scale)
{
  WittElementF out;
  for (const auto& [j, c] : v.coeffs())
    if (std::abs(c) > 1e-14 * scale)
      out.add(j, c);
  return out;
}

double max_abs(const WittElementF& v)
{
  double m = 0.0;
  for (const auto& [j, c] : v.coeffs())
    m = std::max(m, std::abs(c));
  return m;
}

// Rank test: stack basis and candidate as columns over the union of modes and
// compare the smallest singular value with the largest.
bool negligible(const WittElementF& residual, const WittElementF& candidate,
                const std::vector<WittElementF>& basis)
{
  if (residual.empty() || max_abs(residual) <= 1e-14 * max_abs(candidate))
    return true;
  std::vector<int> modes;
  auto collect = [&](const WittElementF& v) {
    for (const auto& [j, c] : v.coeffs())
      modes.push_back(j);
  };
  for (const auto& b : basis)
    collect(b);
  collect(candidate);
  std::sort(modes.begin(), modes.end());
  modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(modes.size()),
                     static_cast<Eigen::Index>(basis.size() + 1));
  for (std::size_t c = 0; c <= basis.size(); ++c) {
    const auto& v = c < basis.size() ? basis[c] : candidate;
    for (std::size_t r = 0; r < modes.size(); ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.coeff(modes[r]);
  }
  // Normalise columns so the threshold is relative to each vector's scale.
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    m.col(c).normalize();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) < kFloatRankThreshold * s(0);
}

template <typename Scalar>
ModeSeries<Scalar> cleaned(const ModeSeries<Scalar>& v, const ModeSeries<Scalar>&)
{
  return v;
}

template <>
WittElementF cleaned(const WittElementF& v, const WittElementF& original)
{
  return prune(v, max_abs(original));
}

template <typename Scalar>
ClosureResultT<Scalar> closure_impl(const std::vector<ModeSeries<Scalar>>& generators,
                                    int mode_bound, int dim_bound)
{
  if (generators.empty())
    throw DomainError("witt_closure: generator list is empty");
  if (static_cast<std::size_t>(dim_bound) < generators.size())
    throw DomainError("witt_closure: dim_bound is smaller than the number of generators");

  int window_lo = 0;
  int window_hi = 0;
  bool have_window = false;
  for (const auto& g : generators) {
    if (g.empty())
      continue;
    if (g.reach() > mode_bound)
      throw DomainError("witt_closure: generator mode " + std::to_string(g.reach()) +
                        " exceeds mode_bound " + std::to_string(mode_bound));
    window_lo = have_window ? std::min(window_lo, g.min_mode()) : g.min_mode();
    window_hi = have_window ? std::max(window_hi, g.max_mode()) : g.max_mode();
    have_window = true;
  }

  Echelon<Scalar> span;
  auto absorb = [&span](const ModeSeries<Scalar>& v) {
    auto r = cleaned(span.reduce(v), v);
    if (negligible(r, v, span.rows))
      return false;
    span.insert(std::move(r));
    return true;
  };
  for (const auto& g : generators)
    absorb(g);

  ClosureResultT<Scalar> result;
  auto out_of_bounds = [&]() -> std::optional<std::string> {
    if (span.rows.size() > static_cast<std::size_t>(dim_bound))
      return "dimension exceeded dim_bound " + std::to_string(dim_bound);
    for (const auto& r : span.rows)
      if (r.reach() > mode_bound)
        return "mode " + std::to_string(r.reach()) + " exceeded mode_bound " +
               std::to_string(mode_bound);
    return std::nullopt;
  };

  while (true) {
    ++result.rounds;
    const auto current = span.rows;
    bool grew = false;
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        grew = absorb(witt_bracket(current[i], current[j])) || grew;

    if (!grew) {
      result.closed = true;
      result.basis = span.rows;
      result.reason = "span stable under brackets";
      return result;
    }
    if (auto why = out_of_bounds()) {
      result.closed = false;
      result.basis = span.rows;
      result.reason = *why;
      // Smallest |mode| outside the generator window; ties go to the positive mode.
      std::optional<int> witness;
      int widest = 0;
      for (const auto& r : span.rows)
        for (const auto& [m, c] : r.coeffs()) {
          widest = std::abs(m) > std::abs(widest) ? m : widest;
          if (m >= window_lo && m <= window_hi)
            continue;
          if (!witness || std::abs(m) < std::abs(*witness) ||
              (std::abs(m) == std::abs(*witness) && m > *witness))
            witness = m;
        }
      result.witness_mode = witness ? *witness : widest;
      return result;
    }
  }
}

} // namespace

ClosureResult witt_closure(const std::vector<WittElement>& generators, int mode_bound, int dim_bound)
{
  return closure_impl(generators, mode_bound, dim_bound);
}

ClosureResultF witt_closure(const std::vector<WittElementF>& generators, int mode_bound,
                            int dim_bound)
{
  return closure_impl(generators, mode_bound, dim_bound);
}

bool in_span(const std::vector<WittElement>& basis, const WittElement& x)
{
  Echelon<GaussRational> e;
  for (const auto& b : basis) {
    auto r = e.reduce(b);
    if (!r.empty())
      e.insert(std::move(r));
  }
  return e.reduce(x).empty();
}

// ---------------------------------------------------------------------------

double So12Element::max_abs() const
{
  return std::max({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])});
}

So12Element so12_bracket(const So12Element& a, const So12Element& b)
{
  const auto& x = a.t;
  const auto& y = b.t;
  return {{-(x[1] * y[2] - x[2] * y[1]), x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]}};
}

Eigen::Matrix3d so12_ad(const So12Element& a)
{
  Eigen::Matrix3d m;
  for (int j = 0; j < 3; ++j) {
    const auto col = so12_bracket(a, So12Element::basis(j));
    for (int i = 0; i < 3; ++i)
      m(i, j) = col.t[static_cast<std::size_t>(i)];
  }
  return m;
}

Eigen::Matrix3d so12_killing_form()
{
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k(i, j) = (so12_ad(So12Element::basis(i)) * so12_ad(So12Element::basis(j))).trace();
  return k;
}

Eigen::Matrix2cd algebra_isomorphism(RealForm target, const So12Element& a)
{
  using C = std::complex<double>;
  const C I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;

  std::array<Eigen::Matrix2cd, 3> img;
  if (target == RealForm::sl2R) {
    const Eigen::Matrix2cd sp = (s1 + I * s2) / 2.0;
    const Eigen::Matrix2cd sm = (s1 - I * s2) / 2.0;
    img = {0.5 * (sp - sm), 0.5 * (sp + sm), 0.5 * s3};
  } else {
    img = {-0.5 * I * s3, 0.5 * s1, 0.5 * s2};
  }
  return a.t[0] * img[0] + a.t[1] * img[1] + a.t[2] * img[2];
}

// f(phi) d/dphi = sum_j f_j e^{ij phi} d/dphi = sum_j (i f_j) L_j.
WittElement witt_T() { return WittElement::mode(0, GaussRational::i()); }

WittElement witt_S(int l)
{
  WittElement s;
  s.add(l, Rational(1, 2));
  s.add(-l, Rational(-1, 2));
  return s;
}

WittElement witt_C(int l)
{
  WittElement c;
  c.add(l, GaussRational(0, Rational(1, 2)));
  c.add(-l, GaussRational(0, Rational(1, 2)));
  return c;
}

So12Element vector_field_to_so12(int l, const WittElementF& v)
{
  if (l < 1)
    throw DomainError("vector_field_to_so12: l must be a positive integer");
  constexpr double tol = 1e-12;
  for (auto it = v.coeffs().rbegin(); it != v.coeffs().rend(); ++it)
    if (const int j = it->first; j != 0 && j != l && j != -l)
      throw DomainError("vector_field_to_so12: mode " + std::to_string(j) + " not in l=" +
                        std::to_string(l) + " span");

  const std::complex<double> I(0.0, 1.0);
  const auto a0 = v.coeff(0);
  const auto ap = v.coeff(l);
  const auto am = v.coeff(-l);
  // v = t T + s S_l + c C_l  =>  a_0 = i t,  a_l = (s + i c)/2,  a_-l = (-s + i c)/2.
  const std::complex<double> t = -I * a0;
  const std::complex<double> s = ap - am;
  const std::complex<double> c = -I * (ap + am);
  const double scale = std::max({1.0, std::abs(t), std::abs(s), std::abs(c)});
  if (std::abs(t.imag()) > tol * scale)
    throw DomainError("vector_field_to_so12: mode 0 coefficient is not a real multiple of T");
  if (std::abs(s.imag()) > tol * scale || std::abs(c.imag()) > tol * scale)
    throw DomainError("vector_field_to_so12: modes " + std::to_string(l) + "/" +
                      std::to_string(-l) + " do not form a real vector field");
  const double ld = static_cast<double>(l);
  return {{ld * t.real(), ld * s.real(), ld * c.real()}};
}

So12Element vector_field_to_so12(int l, const WittElement& v)
{
  return vector_field_to_so12(l, to_float(v));
}

// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s)
{
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      out.push_back(ch);
  return out;
}

} // namespace

WittElement parse_witt(const std::string& text)
{
  const std::string s = strip(text);
  if (s.empty())
    throw std::invalid_argument("empty Witt expression");
  WittElement out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    const auto lpos = s.find('L', pos);
    if (lpos == std::string::npos)
      throw std::invalid_argument("expected 'L<mode>' in '" + text + "'");
    Rational coeff = 1;
    if (lpos > pos) {
      std::string c = s.substr(pos, lpos - pos);
      if (c.back() != '*')
        throw std::invalid_argument("expected '*' before 'L' in '" + text + "'");
      c.pop_back();
      coeff = parse_rational(c);
    }
    std::size_t end = lpos + 1;
    if (end < s.size() && s[end] == '-')
      ++end;
    const std::size_t digits = end;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
      ++end;
    if (end == digits)
      throw std::invalid_argument("missing mode index in '" + text + "'");
    const int mode = std::stoi(s.substr(lpos + 1, end - lpos - 1));
    out.add(mode, GaussRational(sign * coeff));
    pos = end;
  }
  return out;
}

std::vector<WittElement> parse_witt_list(const std::string& text)
{
  std::vector<WittElement> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_witt(item));
  if (out.empty())
    throw std::invalid_argument("empty generator list");
  return out;
}

} // namespace halfcyl
