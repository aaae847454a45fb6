// halfcyl: batch verification front end.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfcyl/classical_action.hpp"
#include "halfcyl/equivalence.hpp"
#include "halfcyl/lie_core.hpp"
#include "halfcyl/suite.hpp"

using namespace halfcyl;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PhasePoint parse_point(const std::string& text)
{
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw DomainError("expected phi,p but got '" + text + "'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw DomainError("expected phi,p but got '" + text + "'");
  }
}

std::string to_text(const WittElement& w)
{
  std::ostringstream os;
  os << w;
  return os.str();
}

int emit(const json& j, const std::string& out_path)
{
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out)
      throw ConfigError("cannot write '" + out_path + "'");
    out << text;
  }
  return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Checks for the l-fold covering action on the half-cylinder and its quantizations"};
  app.require_subcommand(1);

  std::string config_path, profile, out_path;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "Run every check suite over a configuration grid");
  verify->add_option("--config", config_path, "JSON suite configuration")->check(CLI::ExistingFile);
  verify->add_option("--profile", profile, "physical (k in (0,1], m_min = 0) or full")
      ->check(CLI::IsMember({"physical", "full"}));
  verify->add_option("--seed", seed, "Seed for the sampled classical checks");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  double k = 1.0, hbar = 1.0;
  int n = 10;
  std::string format = "table";
  auto* spectrum = app.add_subcommand("spectrum", "Print hbar (k + n), n = 0..N");
  spectrum->add_option("--k", k, "Representation label k > 0")->required();
  spectrum->add_option("--n", n, "Cutoff N");
  spectrum->add_option("--hbar", hbar, "Action unit");
  spectrum->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));

  std::string generators;
  int mode_bound = kDefaultModeBound, dim_bound = kDefaultDimBound;
  auto* closure = app.add_subcommand("closure", "Closure of a set of Witt generators");
  closure->add_option("--generators", generators, "Comma list, e.g. \"L-1, L0, L1\"")->required();
  closure->add_option("--mode-bound", mode_bound, "Largest |mode| explored");
  closure->add_option("--dim-bound", dim_bound, "Largest dimension explored");

  int l = 1;
  std::string from, to;
  auto* orbit = app.add_subcommand("orbit", "Transport between two points of the half-cylinder");
  orbit->add_option("--l", l, "Covering index l >= 1")->check(CLI::PositiveNumber);
  orbit->add_option("--from", from, "phi,p")->required();
  orbit->add_option("--to", to, "phi,p")->required();

  double theta = 1.0;
  int m_min = 0, equiv_n = 64;
  auto* equiv = app.add_subcommand("equiv", "Projection picture against the ladder picture");
  equiv->add_option("--theta", theta, "theta in (0, 1]")->required();
  equiv->add_option("--mmin", m_min, "Lowest kept mode")->required();
  equiv->add_option("--n", equiv_n, "Cutoff N");
  equiv->add_option("--hbar", hbar, "Action unit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) {
      SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : parse_suite_config_text(read_file(config_path));
      if (!profile.empty()) {
        json j = config_echo(cfg);
        j.erase("k_values_effective");
        j.erase("m_min_values_effective");
        j["profile"] = profile;
        cfg = parse_suite_config(j);
      }
      if (seed)
        cfg.seed = *seed;
      const CheckReport report = run_suite(cfg);
      emit(report_to_json(report, cfg), out_path);
      for (const auto& c : report.checks())
        if (!c.pass)
          std::cerr << "FAIL " << c.name << " residual=" << c.residual << " tol=" << c.tol << "\n";
      return report.verdict() ? kExitPass : kExitFail;
    }
    if (*spectrum) {
      std::cout << emit_spectrum(k, n, hbar, format == "json" ? SpectrumFormat::json : SpectrumFormat::table);
      return kExitPass;
    }
    if (*closure) {
      const auto result = witt_closure(parse_witt_list(generators), mode_bound, dim_bound);
      json basis = json::array();
      for (const auto& b : result.basis)
        basis.push_back(to_text(b));
      json j{{"closed", result.closed}, {"dimension", result.dimension()}, {"basis", basis},
             {"rounds", result.rounds}, {"reason", result.reason}};
      j["witness_mode"] = result.witness_mode ? json(*result.witness_mode) : json(nullptr);
      return emit(j, "");
    }
    if (*orbit) {
      const PhasePoint a = parse_point(from);
      const PhasePoint b = parse_point(to);
      const CoveringElement g = transport(a, b, l);
      const PhasePoint y = act_lifted(g, a);
      const double residual = std::max(std::abs(angle_difference(y.phi(), b.phi())), std::abs(y.p() - b.p()));
      const auto symp = check_symplectic(g, a);
      json j{{"l", l},
             {"gamma", {g.gamma().real(), g.gamma().imag()}},
             {"omega", g.omega()},
             {"image", {y.phi(), y.p()}},
             {"round_trip_residual", residual},
             {"symplectic_residual", symp.skipped ? json(nullptr) : json(symp.residual)}};
      emit(j, "");
      return residual < 1e-9 ? kExitPass : kExitFail;
    }
    if (*equiv) {
      CheckReport report = diagram_report(theta, m_min, equiv_n, hbar);
      const Identification id = identify(theta, m_min, equiv_n);
      const RepConfig rc{id.k, equiv_n, hbar, PhaseConvention::creation_plus};
      report.append(sincos_operators(build_generators(Realization::fock, rc)).report, "sincos/");
      json checks = json::array();
      for (const auto& c : report.checks())
        checks.push_back({{"name", c.name}, {"anchor", c.anchor}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}});
      emit({{"theta", theta}, {"m_min", m_min}, {"k", id.k}, {"checks", checks},
            {"verdict", report.verdict() ? "pass" : "fail"}},
           "");
      return report.verdict() ? kExitPass : kExitFail;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
