// Acceptance run: one PASS/FAIL line per criterion.  Exit status 1 if any criterion fails.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "halfcyl/classical_action.hpp"
#include "halfcyl/equivalence.hpp"
#include "halfcyl/lie_core.hpp"
#include "halfcyl/projection_quant.hpp"
#include "halfcyl/quantum_rep.hpp"

using namespace halfcyl;
using Mat = Eigen::MatrixXcd;

namespace {

constexpr int kN = 64;
int failures = 0;

void verdict(int id, const char* title, bool ok, const std::string& detail)
{
  std::printf("%s  %2d  %-28s %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  failures += !ok;
}

std::string sci(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

RepConfig rep(double k, PhaseConvention c = PhaseConvention::creation_plus)
{
  return {k, kN, 1.0, c};
}

double max_residual(const CheckReport& r)
{
  double w = 0.0;
  for (const auto& c : r.checks())
    w = std::max(w, c.residual);
  return w;
}

void spectrum()
{
  const auto s = spectrum_p(rep(1.0));
  bool exact = true;
  for (int n = 0; n <= kN; ++n)
    exact = exact && s[n] == n + 1.0;
  const auto ps = project_positive(build_theta_quantization(1.0, kN, 1.0), 0);
  const Mat p = ps.p();
  for (int n = 0; n <= kN; ++n)
    exact = exact && p(n, n) == std::complex<double>(s[n], 0.0);
  verdict(1, "spectrum", exact, "hbar(k+n) at k=1 and projected p at theta=1, m_min=0 match exactly");
}

void ladder()
{
  double worst = 0.0;
  for (double k : {0.25, 0.5, 1.0, 1.5, 3.0})
    for (auto r : {Realization::fock, Realization::disc, Realization::boundary, Realization::hardy}) {
      const auto rep_ = generator_report(build_generators(r, rep(k)), 1e-7);
      for (const char* name : {"ladder_H_Tplus", "ladder_H_Tminus", "ladder_Tplus_Tminus"})
        worst = std::max(worst, rep_.find(name)->residual);
    }
  verdict(2, "ladder algebra", worst < 1e-7, "max interior residual " + sci(worst) + " < 1e-7");
}

void casimir_check()
{
  double worst = 0.0;
  for (double k : {0.25, 0.5, 1.0, 1.5, 3.0}) {
    const auto gs = build_generators(Realization::fock, rep(k));
    for (int n = 0; n <= gs.C.interior_end(); ++n)
      worst = std::max(worst, std::abs(gs.C.entries(n, n) - k * (1.0 - k)));
  }
  const auto one = build_generators(Realization::fock, rep(1.0));
  double at_one = 0.0;
  for (int n = 0; n <= one.C.interior_end(); ++n)
    at_one = std::max(at_one, std::abs(one.C.entries(n, n)));
  verdict(3, "casimir", worst < 1e-9 && at_one < 1e-9,
          "max |C_nn - k(1-k)| " + sci(worst) + ", k=1 max |C_nn| " + sci(at_one));
}

void phase()
{
  double iso = 0.0, agree = 0.0;
  for (double theta : {0.25, 0.5, 1.0})
    for (int m_min : {0, 1, 2}) {
      const auto id = identify(theta, m_min, kN);
      const auto proj = projection_phase(id, 1.0);
      const auto ladder = phase_operator(build_generators(Realization::fock, rep(id.k)));
      iso = std::max({iso, max_residual(phase_report(proj)), max_residual(phase_report(ladder))});
      agree = std::max(agree, interior_residual(proj.entries, ladder.entries, kN - 1));
    }
  verdict(4, "phase operator", iso < 1e-12 && agree < 1e-12,
          "isometry/coisometry " + sci(iso) + ", pictures differ by " + sci(agree));
}

void tplus()
{
  double worst = 0.0;
  for (double k : {0.25, 0.5, 1.0, 3.0}) {
    const auto gs = build_generators(Realization::fock, rep(k, PhaseConvention::disc_minus));
    const auto u = projection_phase(identify(k - std::ceil(k) + 1.0, static_cast<int>(std::ceil(k)) - 1, kN), 1.0);
    worst = std::max(worst, interior_residual(tplus_from_phase(gs, u), gs.Tplus.entries));
  }
  verdict(5, "T+ reconstruction", worst < 1e-8, "interior residual " + sci(worst) + " < 1e-8");
}

void sincos()
{
  double worst = 0.0;
  for (double k : {0.25, 0.5, 1.0, 3.0})
    for (const char* name : {"sin2_plus_cos2", "sin_cos_commutator", "H_sin", "H_cos"})
      worst = std::max(worst, sincos_operators(build_generators(Realization::fock, rep(k))).report.find(name)->residual);
  verdict(6, "sin/cos anomalies", worst < 1e-10, "max residual " + sci(worst) + " < 1e-10");
}

void conjugation()
{
  double worst = 0.0;
  bool identity_at_half = false;
  for (double k : {0.3, 0.5, 1.0, 2.0}) {
    const auto r = conjugate_realizations(rep(k), 1e-7);
    worst = std::max(worst, max_residual(r));
    if (k == 0.5)
      identity_at_half = r.find("identity_similarity") && r.find("identity_similarity")->residual == 0.0;
  }
  verdict(7, "realization conjugation", worst < 1e-7 && identity_at_half,
          "residual " + sci(worst) + " < 1e-7, D = 1 exactly at k = 1/2");
}

void toeplitz()
{
  int mismatches = 0, hits = 0;
  for (int j = 1; j <= 50; ++j) {
    const double k = 0.5 + (j - 8) * 0.059;
    const bool t = toeplitz_measure_test(rep(k));
    mismatches += t != (k == 0.5);
    hits += t;
  }
  verdict(8, "toeplitz / measure", mismatches == 0 && hits == 1,
          "50-point grid on (0, 3]: " + std::to_string(hits) + " Toeplitz hit, " + std::to_string(mismatches) +
              " mismatches");
}

void classical()
{
  double group = 0.0, symp = 0.0, trip = 0.0, null = 0.0, equi = 0.0, stab = 0.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int l = 1; l <= 3; ++l) {
    auto element = [&] { return CoveringElement(std::polar(0.9 * u(rng), kTwoPi * u(rng)), l * kPi * u(rng), l); };
    auto point = [&] { return PhasePoint(kTwoPi * u(rng), std::exp(4.0 * u(rng) - 2.0)); };
    for (int s = 0; s < 100; ++s) {
      const auto g1 = element();
      const auto g2 = element();
      const auto x = point();
      const auto a = act_lifted(g1, act_lifted(g2, x));
      const auto b = act_lifted(g1 * g2, x);
      group = std::max({group, std::abs(angle_difference(a.phi(), b.phi())), std::abs(a.p() - b.p()) / std::max(1.0, a.p())});
      const auto sc = check_symplectic(g1, x);
      if (!sc.skipped)
        symp = std::max(symp, sc.residual);
      const auto to = point();
      const auto y = act_lifted(transport(x, to, l), x);
      trip = std::max({trip, std::abs(angle_difference(y.phi(), to.phi())), std::abs(y.p() - to.p())});
      const auto img = lightcone_map(x, l);
      null = std::max(null, std::abs(img.interval()) / (img.x0 * img.x0));
      const auto lhs = lightcone_map(act_lifted(g1, x), l);
      const auto rhs = lorentz_action(g1.su11_matrix(), img);
      const double scale = std::max(1.0, lhs.x0);
      equi = std::max({equi, std::abs(lhs.x0 - rhs.x0) / scale, std::abs(lhs.x1 - rhs.x1) / scale,
                       std::abs(lhs.x2 - rhs.x2) / scale});
    }
    const MomentumFunction n(trig_cos(2 * l) - trig_const(1.0));
    for (double p : {1e-3, 1.0, 1e3}) {
      const auto [dphi, dp] = n.hamiltonian_field(0.0, p);
      stab = std::max({stab, std::abs(dphi), std::abs(dp)});
    }
  }
  const bool ok = group < 1e-6 && symp < 1e-6 && trip < 1e-9 && stab == 0.0 && null < 1e-12 && equi < 1e-9;
  verdict(9, "classical action", ok,
          "group " + sci(group) + ", symplectic " + sci(symp) + ", transport " + sci(trip) + ", stabilizer " +
              sci(stab) + ", null " + sci(null) + ", equivariance " + sci(equi));
}

void admissibility()
{
  bool iff = true;
  for (int l = 1; l <= 4; ++l) {
    const auto a = admissibility_audit(
        {MomentumFunction(trig_const(1.0)), MomentumFunction(trig_sin(l)), MomentumFunction(trig_cos(l))});
    iff = iff && a.sgp_pass == (l == 1);
  }
  const auto f = admissibility_audit({MomentumFunction(trig_cos(1)), MomentumFunction(trig_const(1.0) + trig_sin(1))});
  const double err = f.fixed_fiber ? std::abs(angle_difference(*f.fixed_fiber, 1.5 * kPi)) : INFINITY;
  verdict(10, "admissibility", iff && err < 1e-10,
          std::string("SGP iff l = 1 over l <= 4: ") + (iff ? "yes" : "no") + ", fixed fiber off 3pi/2 by " + sci(err));
}

void closure()
{
  auto L = [](int j) { return WittElement::mode(j, GaussRational(1)); };
  bool sl2 = true;
  for (int l = 1; l <= 8; ++l) {
    const auto c = witt_closure({L(-l), L(0), L(l)});
    sl2 = sl2 && c.closed && c.dimension() == 3;
  }
  const auto d = witt_closure({L(1), L(2)});
  const auto b = witt_closure({L(0), L(2)});
  const bool ok = sl2 && !d.closed && d.witness_mode == 3 && b.closed && b.dimension() == 2;
  verdict(11, "witt closure", ok,
          std::string("sl2 for l <= 8: ") + (sl2 ? "closed" : "open") + ", {L1,L2} witness " +
              (d.witness_mode ? std::to_string(*d.witness_mode) : "none") + ", {L0,L2} dim " +
              std::to_string(b.dimension()));
}

void halfline()
{
  const auto r = halfline_demo(64, 16.0, 1.0);
  const bool pos = r.report.find("q_positive")->pass;
  const bool unitary = r.report.find("dilation_unitary")->residual == 0.0;
  const bool ok = pos && unitary && std::abs(r.order - 2.0) <= 0.2;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.order);
  verdict(12, "half-line demo", ok,
          std::string("q > 0: ") + (pos ? "yes" : "no") + ", dilation unitary: " + (unitary ? "exact" : "no") +
              ", order 64->128->256: " + buf);
}

} // namespace

int main()
{
  spectrum();
  ladder();
  casimir_check();
  phase();
  tplus();
  sincos();
  conjugation();
  toeplitz();
  classical();
  admissibility();
  closure();
  halfline();
  std::printf("%d of 12 criteria pass\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
