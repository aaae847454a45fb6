#include "doctest.h"

#include <cmath>
#include <random>

#include "halfcyl/lie_core.hpp"

using namespace halfcyl;
using C = std::complex<double>;

namespace {

WittElement L(int j, long long c = 1) { return WittElement::mode(j, GaussRational(c)); }

// Oracle: a Witt element as the vector-field coefficient f(phi) with
// L_j = -i e^{ij phi} d/dphi; the field bracket is (f g' - g f') d/dphi.
C field_value(const WittElementF& w, double phi)
{
  C f = 0;
  for (const auto& [j, c] : w.coeffs())
    f += c * C(0, -1) * std::exp(C(0, j * phi));
  return f;
}
C field_derivative(const WittElementF& w, double phi)
{
  C f = 0;
  for (const auto& [j, c] : w.coeffs())
    f += c * C(0, -1) * C(0, j) * std::exp(C(0, j * phi));
  return f;
}

WittElement random_integer_element(std::mt19937& rng, int max_mode)
{
  std::uniform_int_distribution<int> mode(-max_mode, max_mode);
  std::uniform_int_distribution<int> coef(-5, 5);
  WittElement w;
  for (int t = 0; t < 3; ++t)
    w.add(mode(rng), GaussRational(Rational(coef(rng)), Rational(coef(rng))));
  return w;
}

So12Element random_so12(std::mt19937& rng)
{
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {{u(rng), u(rng), u(rng)}};
}

} // namespace

TEST_CASE("witt_bracket on basis modes")
{
  CHECK(witt_bracket(L(1), L(-1)) == L(0, -2));
  for (int m = -6; m <= 6; ++m)
    CHECK(witt_bracket(L(0), L(m)) == L(m, m));
  CHECK(witt_bracket(L(3), L(3)).empty());
}

TEST_CASE("witt_bracket agrees with the vector-field bracket")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_integer_element(rng, 4);
    const auto b = random_integer_element(rng, 4);
    const auto ab = to_float(witt_bracket(a, b));
    const auto fa = to_float(a);
    const auto fb = to_float(b);
    for (double phi : {0.0, 0.3, 1.7, 4.1}) {
      const C expected = field_value(fa, phi) * field_derivative(fb, phi) -
                         field_value(fb, phi) * field_derivative(fa, phi);
      CHECK(std::abs(field_value(ab, phi) - expected) < 1e-10);
    }
  }
}

TEST_CASE("witt_bracket is antisymmetric and satisfies Jacobi exactly")
{
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_integer_element(rng, 5);
    const auto b = random_integer_element(rng, 5);
    const auto c = random_integer_element(rng, 5);
    CHECK(witt_bracket(a, a).empty());
    CHECK((witt_bracket(a, b) + witt_bracket(b, a)).empty());
    const auto jac = witt_bracket(a, witt_bracket(b, c)) + witt_bracket(b, witt_bracket(c, a)) +
                     witt_bracket(c, witt_bracket(a, b));
    CHECK(jac.empty());
  }
}

TEST_CASE("witt_closure: sl2 subalgebras")
{
  for (int l = 1; l <= 8; ++l) {
    const auto r = witt_closure({L(-l), L(0), L(l)});
    REQUIRE(r.closed);
    CHECK(r.dimension() == 3);

    // e = L_l / l, f = -L_-l / l, h = 2 L_0 / l give the standard sl(2) relations.
    const GaussRational inv_l(Rational(1, l));
    const auto e = L(l) * inv_l;
    const auto f = L(-l) * (-inv_l);
    const auto h = L(0) * (GaussRational(2) * inv_l);
    CHECK(witt_bracket(h, e) == e * GaussRational(2));
    CHECK(witt_bracket(h, f) == f * GaussRational(-2));
    CHECK(witt_bracket(e, f) == h);
    for (const auto& x : r.basis)
      for (const auto& y : r.basis)
        CHECK(in_span(r.basis, witt_bracket(x, y)));
  }
}

TEST_CASE("witt_closure: two-dimensional and diverging cases")
{
  const auto borel = witt_closure({L(0), L(2)});
  CHECK(borel.closed);
  CHECK(borel.dimension() == 2);

  // Oracle: the mode set generated by pure modes {1, 2} under j + k (j != k).
  std::vector<int> modes{1, 2};
  const int first_new = [&] {
    for (int a : modes)
      for (int b : modes)
        if (a != b && std::find(modes.begin(), modes.end(), a + b) == modes.end())
          return a + b;
    return 0;
  }();
  CHECK(first_new == 3);

  const auto diverging = witt_closure({L(1), L(2)});
  CHECK_FALSE(diverging.closed);
  REQUIRE(diverging.witness_mode.has_value());
  CHECK(*diverging.witness_mode == first_new);
}

TEST_CASE("witt_closure does not depend on generator order")
{
  const std::vector<WittElement> gens{L(-2) + L(0, 3), L(2), L(0)};
  const std::vector<WittElement> perm{L(0), L(2), L(-2) + L(0, 3)};
  const auto a = witt_closure(gens);
  const auto b = witt_closure(perm);
  CHECK(a.closed == b.closed);
  CHECK(a.basis == b.basis);

  const auto x = witt_closure({L(3), L(1), L(0)});
  const auto y = witt_closure({L(0), L(3), L(1)});
  CHECK_FALSE(x.closed);
  CHECK(x.witness_mode == y.witness_mode);
  CHECK(x.basis == y.basis);
}

TEST_CASE("witt_closure rejects four-dimensional spans with L0 and two distinct |modes|")
{
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> mode(1, 6);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    int a = mode(rng);
    int b = mode(rng);
    if (a == b)
      b = a + 1;
    a = sign(rng) ? a : -a;
    b = sign(rng) ? b : -b;
    auto extra = random_integer_element(rng, 6);
    const auto r = witt_closure({L(0), L(a), L(b), extra});
    CHECK_FALSE(r.closed);
    CHECK(r.witness_mode.has_value());
  }
}

TEST_CASE("witt_closure: float inputs and bound handling")
{
  const double s = std::sqrt(2.0);
  const auto r = witt_closure(std::vector<WittElementF>{
      WittElementF::mode(-1, s), WittElementF::mode(0, C(0, s)), WittElementF::mode(1, 0.1)});
  CHECK(r.closed);
  CHECK(r.dimension() == 3);

  const auto capped = witt_closure({L(1), L(2)}, 4, 12);
  CHECK_FALSE(capped.closed);
  CHECK(capped.reason.find("mode_bound") != std::string::npos);

  CHECK_THROWS_AS(witt_closure(std::vector<WittElement>{}), DomainError);
  CHECK_THROWS_AS(witt_closure({L(70)}), DomainError);
}

TEST_CASE("so12_bracket structure constants")
{
  const auto T0 = So12Element::basis(0);
  const auto T1 = So12Element::basis(1);
  const auto T2 = So12Element::basis(2);
  CHECK(so12_bracket(T0, T1) == T2);
  CHECK(so12_bracket(T0, T2) == T1 * -1.0);
  CHECK(so12_bracket(T1, T2) == T0 * -1.0);
  CHECK(so12_bracket(T1, T1) == So12Element{});

  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_so12(rng);
    const auto b = random_so12(rng);
    const auto c = random_so12(rng);
    CHECK((so12_bracket(a, b) + so12_bracket(b, a)).max_abs() < 1e-12);
    const auto jac = so12_bracket(a, so12_bracket(b, c)) + so12_bracket(b, so12_bracket(c, a)) +
                     so12_bracket(c, so12_bracket(a, b));
    CHECK(jac.max_abs() < 1e-12);
  }
}

TEST_CASE("Killing form has signature diag(-1, 1, 1)")
{
  const Eigen::Matrix3d k = so12_killing_form();
  Eigen::Matrix3d expected = Eigen::Vector3d(-2, 2, 2).asDiagonal();
  CHECK((k - expected).cwiseAbs().maxCoeff() < 1e-12);

  for (auto form : {RealForm::sl2R, RealForm::su11}) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Eigen::Matrix2cd m = algebra_isomorphism(form, So12Element::basis(i)) *
                       algebra_isomorphism(form, So12Element::basis(j));
        CHECK(std::abs(m.trace() - 0.25 * k(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("algebra_isomorphism images and homomorphism property")
{
  const C I(0, 1);
  Eigen::Matrix2cd s3;
  s3 << 1, 0, 0, -1;
  CHECK((algebra_isomorphism(RealForm::su11, So12Element::basis(0)) - (-0.5 * I) * s3).norm() ==
        0.0);
  CHECK((algebra_isomorphism(RealForm::sl2R, So12Element::basis(2)) - 0.5 * s3).norm() == 0.0);
  CHECK(algebra_isomorphism(RealForm::sl2R, {}).norm() == 0.0);
  CHECK(algebra_isomorphism(RealForm::su11, {}).norm() == 0.0);

  std::mt19937 rng(9);
  for (auto form : {RealForm::sl2R, RealForm::su11})
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_so12(rng);
      const auto b = random_so12(rng);
      const auto ma = algebra_isomorphism(form, a);
      const auto mb = algebra_isomorphism(form, b);
      const auto lhs = algebra_isomorphism(form, so12_bracket(a, b));
      CHECK((lhs - (ma * mb - mb * ma)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("vector_field_to_so12 dictionary")
{
  CHECK(vector_field_to_so12(1, witt_T()) == So12Element::basis(0));
  CHECK(vector_field_to_so12(2, witt_S(2) * GaussRational(Rational(1, 2))) ==
        So12Element::basis(1));
  CHECK(vector_field_to_so12(3, witt_C(3)) == So12Element::basis(2) * 3.0);

  try {
    vector_field_to_so12(1, witt_S(2));
    FAIL("expected rejection");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("mode 2") != std::string::npos);
  }
  CHECK_THROWS_AS(vector_field_to_so12(1, L(0)), DomainError); // L0 = -i T is not real

  // Homomorphism: field brackets map to so(1,2) brackets for every l.
  for (int l = 1; l <= 5; ++l) {
    const std::vector<WittElement> fields{witt_T(), witt_S(l), witt_C(l)};
    for (const auto& x : fields)
      for (const auto& y : fields) {
        const auto lhs = vector_field_to_so12(l, witt_bracket(x, y));
        const auto rhs = so12_bracket(vector_field_to_so12(l, x), vector_field_to_so12(l, y));
        CHECK((lhs - rhs).max_abs() < 1e-12);
      }
  }
}

TEST_CASE("parse_witt")
{
  CHECK(parse_witt("L-1") == L(-1));
  CHECK(parse_witt("2*L1 - 1/2*L0") ==
        L(1, 2) + WittElement::mode(0, GaussRational(Rational(-1, 2))));
  CHECK(parse_witt_list("L-1, L0,L1").size() == 3);
  CHECK_THROWS(parse_witt("X3"));
  CHECK_THROWS(parse_witt("2L3"));
}
