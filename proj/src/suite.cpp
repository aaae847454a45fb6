#include "halfcyl/suite.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "halfcyl/classical_action.hpp"
#include "halfcyl/equivalence.hpp"
#include "halfcyl/lie_core.hpp"
#include "halfcyl/projection_quant.hpp"
#include "halfcyl/quantum_rep.hpp"

namespace halfcyl {

using nlohmann::json;

namespace {

std::string fmt(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string profile_name(Profile p) { return p == Profile::physical ? "physical" : "full"; }

// ---------------------------------------------------------------------------
// Schema validation.
// ---------------------------------------------------------------------------

double get_number(const json& j, const std::string& key)
{
  if (!j.is_number())
    throw ConfigError(key + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key)
{
  if (!j.is_number_integer())
    throw ConfigError(key + " must be an integer");
  return j.get<int>();
}

std::vector<double> get_numbers(const json& j, const std::string& key)
{
  if (!j.is_array() || j.empty())
    throw ConfigError(key + " must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : j)
    out.push_back(get_number(v, key));
  return out;
}

std::vector<int> get_ints(const json& j, const std::string& key)
{
  if (!j.is_array() || j.empty())
    throw ConfigError(key + " must be a nonempty array");
  std::vector<int> out;
  for (const auto& v : j)
    out.push_back(get_int(v, key));
  return out;
}

void validate(const SuiteConfig& c)
{
  for (double k : c.k_values)
    if (!(k > 0.0) || !std::isfinite(k))
      throw ConfigError("k_values: k must be positive, got " + fmt(k));
  for (double t : c.theta_values)
    if (!(t > 0.0 && t <= 1.0))
      throw ConfigError("theta_values: theta must lie in (0, 1], got " + fmt(t));
  if (c.N < 8 || c.N > 512)
    throw ConfigError("N must lie in [8, 512]");
  if (c.M < 8 || c.M > 512)
    throw ConfigError("M must lie in [8, 512]");
  for (int m : c.m_min_values)
    if (m < 0 || 2 * m > c.M || m > c.N)
      throw ConfigError("m_min_values: need 0 <= m_min <= min(M/2, N), got " + std::to_string(m));
  for (int l : c.l_values)
    if (l < 1 || l > 8)
      throw ConfigError("l_values: l must lie in [1, 8]");
  if (!(c.hbar > 0.0) || !std::isfinite(c.hbar))
    throw ConfigError("hbar must be positive");
  if (c.samples < 1 || c.samples > 100000)
    throw ConfigError("samples must lie in [1, 100000]");
  for (const auto& [name, tol] : c.tolerances)
    if (!(tol >= 0.0) || !std::isfinite(tol))
      throw ConfigError("tolerances." + name + " must be a nonnegative number");
  if (c.effective_k().empty())
    throw ConfigError("no k value lies in (0, 1] as the physical profile requires");
}

// ---------------------------------------------------------------------------
// Cells.  Each returns a self-contained report; nothing is shared between cells.
// ---------------------------------------------------------------------------

double mismatch(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

CheckReport quantum_cell(double k, const SuiteConfig& cfg)
{
  CheckReport r;
  const RepConfig rc{k, cfg.N, cfg.hbar, PhaseConvention::creation_plus};
  const double tol = default_tol(cfg.N);

  for (auto real : {Realization::fock, Realization::disc, Realization::boundary, Realization::hardy}) {
    CheckReport g = generator_report(build_generators(real, rc), tol, 1e-9);
    for (auto& c : g.checks())
      c.family = c.name == "casimir" ? "casimir" : "ladder";
    r.append(g, to_string(real) + "_");
  }

  const auto gs = build_generators(Realization::fock, rc);
  {
    CheckReport c;
    const int last = gs.C.interior_end();
    double mean = 0.0;
    for (int n = 0; n <= last; ++n)
      mean += gs.C.entries(n, n).real();
    mean /= last + 1;
    double var = 0.0;
    for (int n = 0; n <= last; ++n)
      var += std::pow(gs.C.entries(n, n).real() - mean, 2);
    c.check("casimir_flatness", "std of the interior Casimir diagonal", std::sqrt(var / (last + 1)), 1e-10);
    r.append(c, "", "casimir");
  }
  {
    CheckReport c;
    const auto spec = spectrum_p(rc);
    double dev = 0.0;
    for (int n = 0; n <= cfg.N; ++n)
      dev = std::max(dev, std::abs(spec[n] - cfg.hbar * (k + n)));
    c.check("spectrum_p", "spectrum of p = hbar (k + n)", dev, 0.0);
    c.require("spectrum_positive", "spectrum of p > 0", spec.front() > 0.0);
    r.append(c, "", "spectrum");
  }
  {
    CheckReport c;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(cfg.N + 1, cfg.N + 1);
    for (double omega : {0.7, kPi}) {
      const auto R = rotation_rep(omega, rc).entries;
      c.check("rotation_exp_" + fmt(omega), "rotation(omega) = exp(-2 omega T0)",
              mismatch(R, exp_generator(Direction::T0, -2.0 * omega, rc).entries), 1e-12);
      c.check("rotation_unitary_" + fmt(omega), "rotation(omega) is unitary", mismatch(R.adjoint() * R, id),
              1e-12);
    }
    r.append(c, "", "rotation");
  }
  {
    CheckReport c;
    for (auto [d, name] : {std::pair{Direction::T1, "T1"}, std::pair{Direction::T2, "T2"}}) {
      const auto a = exp_audit(d, 0.1, rc);
      c.check(std::string("exp_derivative_") + name, "d/dt exp(t T) at 0 = T", a.derivative_residual, 1e-8);
      c.report(std::string("exp_unitarity_defect_") + name, "|| U*U - 1 || on n <= N/2",
               a.interior_unitarity_defect);
    }
    r.append(c, "", "exp");
  }
  {
    CheckReport c;
    const auto w = gram_weights(rc);
    c.require("gram_w0", "w_0 = 1", w.front() == 1.0);
    bool mono = true;
    for (int n = 1; n <= cfg.N; ++n) {
      if (k < 0.5)
        mono = mono && w[n] > w[n - 1];
      else if (k > 0.5)
        mono = mono && w[n] < w[n - 1];
      else
        mono = mono && w[n] == w[0];
    }
    c.require("gram_monotone", "weights rise for k < 1/2, are flat at 1/2, fall above", mono);
    c.require("toeplitz", "Gram matrix is Toeplitz iff k = 1/2", toeplitz_measure_test(rc) == (k == 0.5));
    r.append(c, "", "gram");
  }
  r.append(phase_report(phase_operator(gs)), "", "phase");
  {
    CheckReport c;
    const double theta = k - std::ceil(k) + 1.0;
    const int m_min = static_cast<int>(std::ceil(k)) - 1;
    const auto minus = build_generators(Realization::fock, {k, cfg.N, cfg.hbar, PhaseConvention::disc_minus});
    const auto uhat = projection_phase(identify(theta, m_min, cfg.N), cfg.hbar);
    c.check("tplus_reconstruction", "T+ = -hbar^-1 sqrt((p + (k-1) hbar)(p - k hbar)) U",
            interior_residual(tplus_from_phase(minus, uhat), minus.Tplus.entries), 1e-8);
    r.append(c, "", "tplus");
  }
  r.append(sincos_operators(gs).report, "", "sincos");
  r.append(conjugate_realizations(rc, 1e-7), "", "conjugation");
  return r;
}

CheckReport toeplitz_cell(const SuiteConfig& cfg)
{
  CheckReport r;
  int mismatches = 0;
  int hits = 0;
  for (int j = 1; j <= 50; ++j) {
    const double k = 0.5 + (j - 8) * 0.059;
    const bool t = toeplitz_measure_test({k, cfg.N, cfg.hbar, PhaseConvention::creation_plus});
    mismatches += t != (k == 0.5);
    hits += t;
  }
  r.require("toeplitz_grid", "measure exists iff k = 1/2 over 50 k in (0, 3]", mismatches == 0 && hits == 1);
  return r;
}

CheckReport projection_cell(double theta, int m_min, const SuiteConfig& cfg)
{
  CheckReport r;
  const auto space = build_theta_quantization(theta, cfg.M, cfg.hbar);
  r.append(theta_report(space), "", "projection");
  r.append(isometry_report(project_positive(space, m_min)), "", "projection");
  r.append(diagram_report(theta, m_min, cfg.N, cfg.hbar), "", "diagram");
  return r;
}

CheckReport classical_cell(int l, const SuiteConfig& cfg)
{
  std::mt19937_64 rng(cfg.seed * 1000003ULL + static_cast<std::uint64_t>(l));
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> radius(0.0, 0.9);
  std::uniform_real_distribution<double> logp(-2.0, 2.0);
  std::uniform_real_distribution<double> rot(0.0, l * kPi);
  auto element = [&] { return CoveringElement(std::polar(radius(rng), angle(rng)), rot(rng), l); };
  auto point = [&] { return PhasePoint(angle(rng), std::exp(logp(rng))); };
  auto gap = [](const PhasePoint& a, const PhasePoint& b) {
    return std::max(std::abs(angle_difference(a.phi(), b.phi())), std::abs(a.p() - b.p()) / std::max(1.0, a.p()));
  };

  double group = 0.0, inverse = 0.0, symp = 0.0, rot_symp = 0.0, round_trip = 0.0, null = 0.0, equi = 0.0;
  int skipped = 0;
  for (int s = 0; s < cfg.samples; ++s) {
    const auto g1 = element();
    const auto g2 = element();
    const auto x = point();
    group = std::max(group, gap(act_lifted(g1, act_lifted(g2, x)), act_lifted(g1 * g2, x)));
    inverse = std::max(inverse, gap(act_lifted(g1.inverse(), act_lifted(g1, x)), x));
    const auto sc = check_symplectic(g1, x);
    if (sc.skipped)
      ++skipped;
    else
      symp = std::max(symp, sc.residual);
    const auto rc = check_symplectic(CoveringElement(0.0, rot(rng), l), x);
    if (!rc.skipped)
      rot_symp = std::max(rot_symp, rc.residual);

    const auto to = point();
    const auto y = act_lifted(transport(x, to, l), x);
    round_trip = std::max(round_trip, std::max(std::abs(angle_difference(y.phi(), to.phi())), std::abs(y.p() - to.p())));

    const auto img = lightcone_map(x, l);
    null = std::max(null, std::abs(img.interval()) / (img.x0 * img.x0));
    const auto lhs = lightcone_map(act_lifted(g1, x), l);
    const auto rhs = lorentz_action(g1.su11_matrix(), img);
    const double scale = std::max(1.0, lhs.x0);
    equi = std::max({equi, std::abs(lhs.x0 - rhs.x0) / scale, std::abs(lhs.x1 - rhs.x1) / scale,
                     std::abs(lhs.x2 - rhs.x2) / scale});
  }

  double stab = 0.0;
  const MomentumFunction n(trig_cos(l) - trig_const(1.0));
  for (double p : {1e-3, 1.0, 1e3}) {
    const auto [dphi, dp] = n.hamiltonian_field(0.0, p);
    stab = std::max({stab, std::abs(dphi), std::abs(dp)});
  }

  bool effective = true;
  for (int j = 1; j < l; ++j)
    effective = effective && std::abs(angle_difference(act_lifted(rotation_flow(kTwoPi * j, l), PhasePoint(0.3, 1.0)).phi(), 0.3)) > 1e-6;
  effective = effective && std::abs(angle_difference(act_lifted(rotation_flow(kTwoPi * l, l), PhasePoint(0.3, 1.0)).phi(), 0.3)) < 1e-9;

  const auto sign = measure_momentum_sign(l);

  CheckReport r;
  r.check("group_law", "act(g1, act(g2, x)) = act(g1 g2, x)", group, 1e-6);
  r.check("group_inverse", "act(g^-1, act(g, x)) = x", inverse, 1e-6);
  r.check("symplectic", "J^T Omega J = Omega", symp, kSymplecticTol);
  r.check("rotation_symplectic", "rotations are symplectic", rot_symp, 1e-10);
  r.report("symplectic_seam_skips", "samples within 10 h of the seam", skipped);
  r.check("transport_round_trip", "transport(a, b) maps a to b", round_trip, 1e-9);
  r.check("lightcone_null", "x0^2 - x1^2 - x2^2 = 0", null, 1e-12);
  r.check("lightcone_equivariance", "lightcone(act(g, x)) = A lightcone(x) A*", equi, 1e-9);
  r.check("stabilizer_field", "p(cos(l phi) - 1) has zero field over phi = 0", stab, 0.0);
  r.require("effective_covering", "rotation by 2 pi j acts trivially iff l divides j", effective);
  r.require("momentum_sign", "{lift X, lift Y} = -lift [X, Y]", sign.sigma == -1 && sign.residual == 0.0);
  return r;
}

CheckReport admissibility_cell()
{
  CheckReport r;
  for (int l = 1; l <= 4; ++l) {
    const auto a = admissibility_audit(
        {MomentumFunction(trig_const(1.0)), MomentumFunction(trig_sin(l)), MomentumFunction(trig_cos(l))});
    r.require("sgp_l" + std::to_string(l), "strong generating principle holds iff l = 1",
              a.sgp_pass == (l == 1) && a.period_divisor == l && a.transitive);
  }
  const auto f = admissibility_audit(
      {MomentumFunction(trig_cos(1)), MomentumFunction(trig_const(1.0) + trig_sin(1))});
  r.check("fixed_fiber", "{p cos phi, p(1 + sin phi)} fixes the fiber over 3 pi / 2",
          f.fixed_fiber ? std::abs(angle_difference(*f.fixed_fiber, 1.5 * kPi)) : 1.0, 1e-10);
  r.require("fixed_fiber_not_transitive", "a fixed fiber obstructs transitivity", !f.transitive);
  return r;
}

CheckReport closure_cell()
{
  auto L = [](int j) { return WittElement::mode(j, GaussRational(1)); };
  CheckReport r;
  bool sl2 = true;
  for (int l = 1; l <= 8; ++l) {
    const auto c = witt_closure({L(-l), L(0), L(l)});
    sl2 = sl2 && c.closed && c.dimension() == 3;
  }
  r.require("closure_sl2", "<L-l, L0, Ll> is closed of dimension 3 for l <= 8", sl2);
  const auto d = witt_closure({L(1), L(2)});
  r.require("closure_witness", "{L1, L2} is not closed; witness mode 3", !d.closed && d.witness_mode == 3);
  const auto b = witt_closure({L(0), L(2)});
  r.require("closure_borel", "{L0, L2} is closed of dimension 2", b.closed && b.dimension() == 2);
  return r;
}

// Runs cells concurrently and appends their reports in submission order.
class CellRunner
{
public:
  void add(std::string prefix, std::string family, std::function<CheckReport()> fn)
  {
    cells_.push_back({std::move(prefix), std::move(family), std::async(std::launch::async, std::move(fn))});
  }

  CheckReport collect()
  {
    CheckReport out;
    for (auto& c : cells_) {
      try {
        out.append(c.result.get(), c.prefix, c.family);
      } catch (const std::exception& e) {
        CheckReport failed;
        failed.require("cell_error", e.what(), false);
        out.append(failed, c.prefix, c.family);
      }
    }
    return out;
  }

private:
  struct Cell
  {
    std::string prefix;
    std::string family;
    std::future<CheckReport> result;
  };
  std::vector<Cell> cells_;
};

} // namespace

std::vector<double> SuiteConfig::effective_k() const
{
  std::vector<double> out;
  for (double k : k_values)
    if (profile == Profile::full || (k > 0.0 && k <= 1.0))
      out.push_back(k);
  return out;
}

std::vector<int> SuiteConfig::effective_m_min() const
{
  if (profile == Profile::physical)
    return {0};
  return m_min_values;
}

SuiteConfig parse_suite_config(const json& j)
{
  if (!j.is_object())
    throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"k_values", "theta_values", "m_min_values", "l_values",
                                           "N",        "M",            "hbar",         "tolerances",
                                           "seed",     "samples",      "profile"};
  for (const auto& [key, v] : j.items())
    if (!known.count(key))
      throw ConfigError("unknown key '" + key + "'");

  SuiteConfig c;
  if (j.contains("k_values"))
    c.k_values = get_numbers(j["k_values"], "k_values");
  if (j.contains("theta_values"))
    c.theta_values = get_numbers(j["theta_values"], "theta_values");
  if (j.contains("m_min_values"))
    c.m_min_values = get_ints(j["m_min_values"], "m_min_values");
  if (j.contains("l_values"))
    c.l_values = get_ints(j["l_values"], "l_values");
  if (j.contains("N"))
    c.N = get_int(j["N"], "N");
  if (j.contains("M"))
    c.M = get_int(j["M"], "M");
  if (j.contains("hbar"))
    c.hbar = get_number(j["hbar"], "hbar");
  if (j.contains("samples"))
    c.samples = get_int(j["samples"], "samples");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw ConfigError("seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    if (p == "physical")
      c.profile = Profile::physical;
    else if (p == "full")
      c.profile = Profile::full;
    else
      throw ConfigError("profile must be \"physical\" or \"full\"");
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object())
      throw ConfigError("tolerances must be an object of name -> number");
    for (const auto& [name, v] : j["tolerances"].items())
      c.tolerances[name] = get_number(v, "tolerances." + name);
  }
  validate(c);
  return c;
}

SuiteConfig parse_suite_config_text(const std::string& text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_suite_config(j);
}

json config_echo(const SuiteConfig& c)
{
  json tol = json::object();
  for (const auto& [name, v] : c.tolerances)
    tol[name] = v;
  return {{"k_values", c.k_values},
          {"k_values_effective", c.effective_k()},
          {"theta_values", c.theta_values},
          {"m_min_values", c.m_min_values},
          {"m_min_values_effective", c.effective_m_min()},
          {"l_values", c.l_values},
          {"N", c.N},
          {"M", c.M},
          {"hbar", c.hbar},
          {"tolerances", tol},
          {"seed", c.seed},
          {"samples", c.samples},
          {"profile", profile_name(c.profile)}};
}

double tolerance_for(const SuiteConfig& config, const CheckRecord& record)
{
  const auto slash = record.name.rfind('/');
  const std::string base = slash == std::string::npos ? record.name : record.name.substr(slash + 1);
  for (const auto& key : {base, record.family, std::string("default")}) {
    const auto it = config.tolerances.find(key);
    if (!key.empty() && it != config.tolerances.end())
      return it->second;
  }
  return record.tol;
}

CheckReport run_suite(const SuiteConfig& config)
{
  validate(config);
  CellRunner cells;
  for (double k : config.effective_k())
    cells.add("quantum[k=" + fmt(k) + "]/", "quantum", [k, &config] { return quantum_cell(k, config); });
  cells.add("toeplitz/", "gram", [&config] { return toeplitz_cell(config); });
  for (double theta : config.theta_values)
    for (int m_min : config.effective_m_min())
      cells.add("projection[theta=" + fmt(theta) + ",m_min=" + std::to_string(m_min) + "]/", "projection",
                [theta, m_min, &config] { return projection_cell(theta, m_min, config); });
  for (int l : config.l_values)
    cells.add("classical[l=" + std::to_string(l) + "]/", "classical", [l, &config] { return classical_cell(l, config); });
  cells.add("admissibility/", "admissibility", [] { return admissibility_cell(); });
  cells.add("closure/", "closure", [] { return closure_cell(); });
  cells.add("halfline/", "halfline", [&config] { return halfline_demo(64, 16.0, config.hbar).report; });

  CheckReport report = cells.collect();
  for (auto& c : report.checks())
    if (!c.boolean) {
      c.tol = tolerance_for(config, c);
      c.pass = c.residual <= c.tol;
    }
  return report;
}

json report_to_json(const CheckReport& report, const SuiteConfig& config)
{
  json checks = json::array();
  int failed = 0;
  for (const auto& c : report.checks()) {
    checks.push_back({{"name", c.name}, {"anchor", c.anchor}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}});
    failed += !c.pass;
  }
  json metrics = json::array();
  for (const auto& m : report.metrics())
    metrics.push_back({{"name", m.name}, {"anchor", m.anchor}, {"value", m.value}});
  return {{"version", kReportVersion},
          {"config_echo", config_echo(config)},
          {"checks", checks},
          {"metrics", metrics},
          {"summary", {{"checks", report.checks().size()}, {"failed", failed}}},
          {"verdict", report.verdict() ? "pass" : "fail"}};
}

CheckReport report_from_json(const json& j)
{
  auto number = [](const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
  CheckReport r;
  for (const auto& c : j.at("checks")) {
    CheckRecord rec;
    rec.name = c.at("name").get<std::string>();
    rec.anchor = c.at("anchor").get<std::string>();
    rec.residual = number(c.at("residual"));
    rec.tol = number(c.at("tol"));
    rec.pass = c.at("pass").get<bool>();
    r.add(std::move(rec));
  }
  if (j.contains("metrics"))
    for (const auto& m : j.at("metrics"))
      r.report(m.at("name").get<std::string>(), m.at("anchor").get<std::string>(), number(m.at("value")));
  return r;
}

std::string emit_spectrum(double k, int N, double hbar, SpectrumFormat format)
{
  if (N < 0)
    throw DomainError("N must be nonnegative");
  const auto spec = spectrum_p({k, std::max(N, 4), hbar, PhaseConvention::creation_plus});
  const std::vector<double> values(spec.begin(), spec.begin() + N + 1);
  if (format == SpectrumFormat::json)
    return json{{"k", k}, {"N", N}, {"hbar", hbar}, {"spectrum", values}}.dump() + "\n";
  std::string out;
  for (double v : values)
    out += fmt(v) + "\n";
  return out;
}

std::vector<double> parse_spectrum(const std::string& json_text)
{
  return json::parse(json_text).at("spectrum").get<std::vector<double>>();
}

} // namespace halfcyl
