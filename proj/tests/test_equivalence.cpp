#include "doctest.h"

#include <cmath>

#include "halfcyl/equivalence.hpp"

using namespace halfcyl;
using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

namespace {

RepConfig cfg(double k, int N = 64, PhaseConvention c = PhaseConvention::creation_plus, double hbar = 1.0)
{
  return {k, N, hbar, c};
}

// Oracle: unit shift e_n -> e_{n+1} on columns 0..N-1.
Mat shift(int N)
{
  Mat s = Mat::Zero(N + 1, N + 1);
  for (int n = 0; n < N; ++n)
    s(n + 1, n) = 1.0;
  return s;
}

void all_pass(const CheckReport& r)
{
  for (const auto& c : r.checks()) {
    INFO(c.name, " residual=", c.residual, " tol=", c.tol);
    CHECK(c.pass);
  }
}

} // namespace

TEST_CASE("identify")
{
  CHECK(identify(0.25, 0).k == 0.25);
  CHECK(identify(1.0, 2).k == 3.0);
  const auto id = identify(0.5, 3, 10);
  REQUIRE(id.basis_map.size() == 11);
  CHECK(id.basis_map.front() == 3);
  CHECK(id.basis_map.back() == 13);
  CHECK_THROWS_AS(identify(0.0, 0), DomainError);
  CHECK_THROWS_AS(identify(0.5, -1), DomainError);

  // Spectra agree entrywise: hbar(m + theta) with m = n + m_min equals hbar(k + n).
  for (double theta : {0.25, 0.5, 1.0})
    for (int m_min : {0, 1, 4}) {
      const auto i = identify(theta, m_min, 20);
      const auto spec = spectrum_p(cfg(i.k, 20, PhaseConvention::creation_plus, 0.5));
      for (int n = 0; n <= 20; ++n)
        CHECK(0.5 * (i.basis_map[n] + theta) == doctest::Approx(spec[n]).epsilon(1e-15));
    }
}

TEST_CASE("phase_operator")
{
  for (double k : {0.25, 0.5, 1.0, 3.0}) {
    const auto gs = build_generators(Realization::fock, cfg(k));
    const auto u = phase_operator(gs);
    CHECK((u.entries - shift(64)).cwiseAbs().maxCoeff() < 1e-15);
    all_pass(phase_report(u));

    const Mat tt = (gs.Tminus * gs.Tplus).entries;
    const double q = k * (1 - k);
    const double lambda = k;
    CHECK(tt(0, 0).real() == doctest::Approx(q + lambda * (lambda + 1)).epsilon(1e-14));
    CHECK(tt(0, 0).real() == doctest::Approx(2 * k).epsilon(1e-14));
    for (int n = 0; n < 64; ++n)
      CHECK(tt(n, n).real() == doctest::Approx((2 * k + n) * (n + 1)).epsilon(1e-13));

    const Mat uu = u.entries * u.entries.adjoint();
    CHECK(uu.col(0).norm() == 0.0);
    for (int n = 1; n < 64; ++n)
      CHECK(std::abs(uu(n, n) - 1.0) < 1e-15);

    const auto minus = phase_operator(build_generators(Realization::fock, cfg(k, 64, PhaseConvention::disc_minus)));
    CHECK((minus.entries + shift(64)).cwiseAbs().maxCoeff() < 1e-15);
  }
  // The boundary picture is not orthonormal: its phase operator is a weighted shift.
  const auto b = phase_operator(build_generators(Realization::boundary, cfg(2.0, 16)));
  CHECK(std::abs(b.entries(1, 0)) > 1.1);
}

TEST_CASE("tplus_from_phase reconstructs T+")
{
  const auto unit = projection_phase(identify(1.0, 0, 64), 1.0);
  CHECK((unit.entries - shift(64)).cwiseAbs().maxCoeff() == 0.0);

  // k = 1, n = 0: sqrt((p + 0)(p - hbar)) / hbar at p = 2 hbar gives sqrt 2.
  const auto gs1 = build_generators(Realization::fock, cfg(1.0, 64, PhaseConvention::disc_minus));
  const auto t1 = tplus_from_phase(gs1, unit);
  CHECK(std::abs(t1.entries(1, 0) + std::sqrt(2.0)) < 1e-15);

  for (double hbar : {1.0, 0.3})
    for (double k : {0.25, 0.5, 1.0, 3.0})
      for (auto c : {PhaseConvention::disc_minus, PhaseConvention::creation_plus}) {
        const auto gs = build_generators(Realization::fock, cfg(k, 64, c, hbar));
        const auto u = projection_phase(identify(k - std::ceil(k) + 1.0, static_cast<int>(std::ceil(k)) - 1, 64), hbar);
        const auto t = tplus_from_phase(gs, u);
        CHECK(interior_residual(t, gs.Tplus.entries) < default_tol(64));
        // The ground-state factor (p - k hbar) vanishes.
        const double p0 = hbar * gs.H.entries(0, 0).real();
        CHECK(std::abs(p0 - k * hbar) < 1e-15);
      }
  CHECK_THROWS_AS(tplus_from_phase(gs1, projection_phase(identify(1.0, 0, 10), 1.0)), DomainError);
}

TEST_CASE("sincos_operators")
{
  for (double k : {0.25, 0.5, 1.0, 3.0})
    for (auto c : {PhaseConvention::creation_plus, PhaseConvention::disc_minus}) {
      const auto gs = build_generators(Realization::fock, cfg(k, 64, c));
      const auto sc = sincos_operators(gs);
      all_pass(sc.report);
      CHECK(sc.report.find_metric("unitarity_defect")->value == doctest::Approx(1.0));

      const Mat sum = (sc.sin * sc.sin + sc.cos * sc.cos).entries;
      CHECK(std::abs(sum(0, 0) - 0.5) < 1e-15);
      CHECK(std::abs(sum(5, 5) - 1.0) < 1e-15);
      CHECK(sum.col(5).cwiseAbs().sum() == doctest::Approx(1.0));
      const Mat comm = commutator(sc.sin, sc.cos).entries;
      CHECK(std::abs(comm(0, 0) - C(0, 0.5)) < 1e-15);
      for (int n = 1; n < 63; ++n)
        CHECK(comm.col(n).cwiseAbs().maxCoeff() < 1e-15);
    }

  // Convention covariance: the (-1)^n similarity maps one set onto the other.
  const Mat s = convention_similarity(32);
  const auto plus = sincos_operators(build_generators(Realization::fock, cfg(0.7, 32)));
  const auto minus = sincos_operators(build_generators(Realization::fock, cfg(0.7, 32, PhaseConvention::disc_minus)));
  CHECK((s * plus.sin.entries * s - minus.sin.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s * plus.cos.entries * s - minus.cos.entries).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t i = 0; i < plus.report.checks().size(); ++i)
    CHECK(plus.report.checks()[i].residual == minus.report.checks()[i].residual);
}

TEST_CASE("conjugate_realizations")
{
  for (double k : {0.3, 0.5, 1.0, 2.0})
    for (auto c : {PhaseConvention::creation_plus, PhaseConvention::disc_minus}) {
      const auto r = conjugate_realizations(cfg(k, 64, c), 1e-7);
      all_pass(r);
      CHECK((r.find("identity_similarity") != nullptr) == (k == 0.5));
    }
  const auto r = conjugate_realizations(cfg(1.0), default_tol(64));
  all_pass(r);
  CHECK(r.find_metric("similarity_deviation")->value > 1.0);

  // Oracle: c_n at k = 1 is sqrt(n + 1), so D^-1 T+_boundary D has entry -(2+n) sqrt((n+1)/(n+2)).
  const auto b = build_generators(Realization::boundary, cfg(1.0, 8, PhaseConvention::disc_minus));
  const auto h = build_generators(Realization::hardy, cfg(1.0, 8, PhaseConvention::disc_minus));
  for (int n = 0; n < 8; ++n) {
    const double mapped = b.Tplus.entries(n + 1, n).real() * std::sqrt(n + 1.0) / std::sqrt(n + 2.0);
    CHECK(mapped == doctest::Approx(h.Tplus.entries(n + 1, n).real()).epsilon(1e-14));
  }
}

TEST_CASE("diagram commutes for a grid of (theta, m_min)")
{
  for (double theta : {0.1, 0.25, 0.5, 0.75, 1.0})
    for (int m_min : {0, 1, 2, 5})
      for (double hbar : {1.0, 0.25}) {
        INFO("theta=", theta, " m_min=", m_min);
        all_pass(diagram_report(theta, m_min, 32, hbar));
      }
  CHECK_THROWS_AS(diagram_report(0.5, 40, 32, 1.0), DomainError);
}
