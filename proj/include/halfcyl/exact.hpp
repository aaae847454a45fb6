#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace halfcyl {

using Rational = boost::multiprecision::cpp_rational;

/// Complex number with exact rational real and imaginary parts.
class GaussRational
{
public:
  GaussRational() = default;
  GaussRational(long long re) : re_(re) {}
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {0, 1}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  std::complex<double> to_complex() const
  {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

  GaussRational operator-() const { return {-re_, -im_}; }

  GaussRational& operator+=(const GaussRational& o)
  {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o)
  {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o)
  {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o)
  {
    // (a+ib)/(c+id) = (a+ib)(c-id)/(c^2+d^2)
    const Rational den = o.norm2();
    *this *= o.conj();
    re_ /= den;
    im_ /= den;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b)
  {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z)
  {
    if (z.im_ == 0)
      return os << z.re_;
    if (z.re_ == 0)
      return os << z.im_ << "i";
    return os << "(" << z.re_ << (z.im_ < 0 ? "" : "+") << z.im_ << "i)";
  }

private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const GaussRational& z) { return z.is_zero(); }
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

/// Parses "3", "-2/5" or "7/1" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

} // namespace halfcyl
