#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <map>
#include <ostream>

#include "halfcyl/exact.hpp"

namespace halfcyl {

/// Finite sum  sum_j c_j X_j  over integer modes j. Zero coefficients are
/// never stored, so two series are equal iff their maps are equal.
template <typename Scalar>
class ModeSeries
{
public:
  using scalar_type = Scalar;
  using map_type = std::map<int, Scalar>;

  ModeSeries() = default;

  static ModeSeries mode(int j, Scalar c = Scalar(1))
  {
    ModeSeries s;
    s.add(j, c);
    return s;
  }

  void add(int j, const Scalar& c)
  {
    if (is_zero(c))
      return;
    auto [it, inserted] = coeffs_.try_emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second))
        coeffs_.erase(it);
    }
  }

  Scalar coeff(int j) const
  {
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }

  const map_type& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  int min_mode() const { return coeffs_.begin()->first; }
  int max_mode() const { return coeffs_.rbegin()->first; }

  /// Largest |j| carried by the series; 0 for the empty series.
  int reach() const
  {
    if (coeffs_.empty())
      return 0;
    return std::max(std::abs(min_mode()), std::abs(max_mode()));
  }

  ModeSeries& operator+=(const ModeSeries& o)
  {
    for (const auto& [j, c] : o.coeffs_)
      add(j, c);
    return *this;
  }
  ModeSeries& operator-=(const ModeSeries& o)
  {
    for (const auto& [j, c] : o.coeffs_)
      add(j, -c);
    return *this;
  }
  ModeSeries& operator*=(const Scalar& s)
  {
    if (is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [j, c] : coeffs_)
      c *= s;
    return *this;
  }

  friend ModeSeries operator+(ModeSeries a, const ModeSeries& b) { return a += b; }
  friend ModeSeries operator-(ModeSeries a, const ModeSeries& b) { return a -= b; }
  friend ModeSeries operator*(ModeSeries a, const Scalar& s) { return a *= s; }
  friend ModeSeries operator*(const Scalar& s, ModeSeries a) { return a *= s; }
  friend bool operator==(const ModeSeries& a, const ModeSeries& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const ModeSeries& s)
  {
    if (s.coeffs_.empty())
      return os << "0";
    bool first = true;
    for (const auto& [j, c] : s.coeffs_) {
      os << (first ? "" : " + ") << c << "*L" << j;
      first = false;
    }
    return os;
  }

private:
  map_type coeffs_;
};

} // namespace halfcyl
