#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "isingff/correlation.hpp"
#include "isingff/errors.hpp"
#include "isingff/form_factors.hpp"
#include "isingff/oracle.hpp"
#include "isingff/spectral_curve.hpp"
#include "isingff/verification.hpp"

namespace isingff::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOracleMaxSites = 10;
constexpr double kDefaultTolerance = 1e-10;
constexpr double kDefaultOracleTolerance = 1e-8;

struct RunConfig {
  std::string command;
  double kx = 0.0;
  double ky = 0.0;
  int n = 4;
  int site = 0;
  std::vector<std::string> bra;
  std::vector<std::string> ket;
  int m_height = 4;
  int dx = 0;
  int dy = 0;
  int eps_x = 1;
  int eps_y = 1;
  std::optional<int> cutoff;
  std::string suite = "all";
  int samples = 100;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::string output = "json";
  double tolerance = kDefaultTolerance;
  double oracle_tolerance = kDefaultOracleTolerance;
  bool no_oracle = false;
};

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

ordered_json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

// Finite doubles pass through; NaN and infinities become null.
ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

std::vector<int> parse_indices(const std::string& text, int n, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      continue;
    }
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw InputError(std::string("invalid ") + what + " index '" + token + "'");
    }
    if (used != token.size()) {
      throw InputError(std::string("invalid ") + what + " index '" + token + "'");
    }
    if (value < 0 || value >= n) {
      throw InputError(std::string(what) + " index " + token + " outside 0.." + std::to_string(n - 1));
    }
    out.push_back(value);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) {
      throw InputError(std::string(what) + " indices must be distinct and increasing");
    }
  }
  return out;
}

std::string indices_text(const std::vector<int>& idx, char sep) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) {
      s += sep;
    }
    s += std::to_string(idx[i]);
  }
  return s;
}

ordered_json couplings_input(const RunConfig& cfg) {
  return {{"kx", cfg.kx}, {"ky", cfg.ky}, {"n", cfg.n}};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << cells[i];
    }
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) {
    line(r);
  }
}

int cmd_params(const RunConfig& cfg, std::ostream& out) {
  const Couplings c(cfg.n, cfg.kx, cfg.ky);
  const auto& m = c.modulus();
  ordered_json j;
  j["command"] = "params";
  j["input"] = couplings_input(cfg);
  j["kx_star"] = c.kx_star();
  j["ferromagnetic"] = c.kx_star() < c.ky();
  j["s"] = c.s();
  j["alpha"] = c.alpha();
  j["beta"] = c.beta();
  j["gamma0"] = c.gamma0();
  j["gamma_pi"] = c.gamma_pi();
  j["k"] = m.k();
  j["kprime"] = m.kprime();
  j["K"] = m.K();
  j["Kprime"] = m.Kprime();
  j["nome"] = m.nome();
  j["eta"] = c.eta();
  j["xi"] = c.xi();
  if (cfg.output == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [key, value] : j.items()) {
      if (value.is_number()) {
        rows.push_back({key, format_double(value.get<double>())});
      } else if (value.is_boolean()) {
        rows.push_back({key, value.get<bool>() ? "true" : "false"});
      }
    }
    write_csv(out, {"name", "value"}, rows);
  } else {
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const Couplings c(cfg.n, cfg.kx, cfg.ky);
  const SpectralTable t(c);
  ordered_json points = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (Sector s : {Sector::antiperiodic, Sector::periodic}) {
    for (int i = 0; i < c.n(); ++i) {
      const auto& p = t.point(s, i);
      points.push_back({{"sector", sector_name(s)},
                        {"index", i},
                        {"numerator", p.numerator},
                        {"theta", p.theta},
                        {"gamma", p.gamma},
                        {"b", complex_json(p.b)},
                        {"sqrt_b", complex_json(p.sqrt_b)},
                        {"u", p.u},
                        {"nu", t.nu(s, i)}});
      rows.push_back({sector_name(s), std::to_string(i), std::to_string(p.numerator), format_double(p.theta),
                      format_double(p.gamma), format_double(p.b.real()), format_double(p.b.imag()),
                      format_double(p.sqrt_b.real()), format_double(p.sqrt_b.imag()), format_double(p.u),
                      format_double(t.nu(s, i))});
    }
  }
  if (cfg.output == "csv") {
    write_csv(out, {"sector", "index", "numerator", "theta", "gamma", "b_re", "b_im", "sqrt_b_re", "sqrt_b_im", "u", "nu"},
              rows);
  } else {
    ordered_json j;
    j["command"] = "spectrum";
    j["input"] = couplings_input(cfg);
    j["points"] = points;
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

double relative_difference(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

int cmd_ff(const RunConfig& cfg, std::ostream& out) {
  const Couplings c(cfg.n, cfg.kx, cfg.ky);
  const SpectralTable t(c);
  if (cfg.site < 0 || cfg.site >= cfg.n) {
    throw InputError("site must lie in 0.." + std::to_string(cfg.n - 1));
  }
  const std::vector<std::string> bras = cfg.bra.empty() ? std::vector<std::string>{""} : cfg.bra;
  const std::vector<std::string> kets = cfg.ket.empty() ? std::vector<std::string>{""} : cfg.ket;
  const bool use_oracle = !cfg.no_oracle && cfg.n <= kOracleMaxSites;

  struct OracleData {
    std::unique_ptr<oracle::SpinOperatorSet> ops;
    std::unique_ptr<oracle::LabeledSpectrum> spectrum;
  };
  std::map<int, OracleData> oracles;
  auto oracle_for = [&](int eps_y) -> const OracleData& {
    auto it = oracles.find(eps_y);
    if (it == oracles.end()) {
      OracleData d;
      d.ops = std::make_unique<oracle::SpinOperatorSet>(c, eps_y);
      d.spectrum = std::make_unique<oracle::LabeledSpectrum>(oracle::labeled_spectrum(*d.ops, t));
      it = oracles.emplace(eps_y, std::move(d)).first;
    }
    return it->second;
  };

  bool all_passed = true;
  ordered_json results = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& bra_text : bras) {
    for (const auto& ket_text : kets) {
      const FockState bra(Sector::antiperiodic, parse_indices(bra_text, cfg.n, "bra"), cfg.n);
      const FockState ket(Sector::periodic, parse_indices(ket_text, cfg.n, "ket"), cfg.n);
      const FormFactorSpec spec(cfg.site, bra, ket, cfg.n);
      const cplx closed = ff_closed(spec, t);
      const cplx pf = ff_pfaffian(spec, t, PairingSource::closed_form);
      const double route_residual = relative_difference(closed, pf);
      const bool route_ok = route_residual <= cfg.tolerance;

      std::optional<double> oracle_abs;
      std::optional<double> oracle_residual;
      bool oracle_ok = true;
      if (use_oracle) {
        const auto& od = oracle_for(bra.size() % 2 == 0 ? 1 : -1);
        oracle_abs = oracle::oracle_ff_modulus(*od.ops, *od.spectrum, spec);
        const double scale = std::max(*oracle_abs, std::abs(closed));
        oracle_residual = scale == 0.0 ? 0.0 : std::abs(std::abs(closed) - *oracle_abs) / scale;
        oracle_ok = *oracle_residual <= cfg.oracle_tolerance;
      }
      const bool passed = route_ok && oracle_ok;
      all_passed = all_passed && passed;

      ordered_json agreement;
      agreement["closed_vs_pfaffian"] = {{"residual", route_residual}, {"tolerance", cfg.tolerance},
                                         {"passed", route_ok}};
      if (oracle_residual) {
        agreement["closed_vs_oracle"] = {{"residual", *oracle_residual}, {"tolerance", cfg.oracle_tolerance},
                                         {"passed", oracle_ok}};
      } else {
        agreement["closed_vs_oracle"] = nullptr;
      }
      results.push_back({{"site", cfg.site},
                         {"bra", bra.indices()},
                         {"ket", ket.indices()},
                         {"ff_closed", complex_json(closed)},
                         {"ff_pfaffian", complex_json(pf)},
                         {"oracle_abs", oracle_abs ? ordered_json(*oracle_abs) : ordered_json(nullptr)},
                         {"agreement", agreement},
                         {"passed", passed}});
      rows.push_back({std::to_string(cfg.site), indices_text(bra.indices(), ';'), indices_text(ket.indices(), ';'),
                      format_double(closed.real()), format_double(closed.imag()), format_double(std::abs(closed)),
                      format_double(pf.real()), format_double(pf.imag()),
                      oracle_abs ? format_double(*oracle_abs) : "", format_double(route_residual),
                      oracle_residual ? format_double(*oracle_residual) : "", passed ? "true" : "false"});
    }
  }
  if (cfg.output == "csv") {
    write_csv(out, {"site", "bra", "ket", "closed_re", "closed_im", "closed_abs", "pfaffian_re", "pfaffian_im",
                    "oracle_abs", "closed_vs_pfaffian", "closed_vs_oracle", "passed"},
              rows);
  } else {
    ordered_json j;
    j["command"] = "ff";
    j["input"] = couplings_input(cfg);
    j["results"] = results;
    j["passed"] = all_passed;
    out << j.dump(2) << "\n";
  }
  return all_passed ? kExitOk : kExitVerification;
}

int cmd_corr(const RunConfig& cfg, std::ostream& out) {
  const Couplings c(cfg.n, cfg.kx, cfg.ky);
  const SpectralTable t(c);
  const auto r = two_point_correlation(t, cfg.m_height, cfg.dx, cfg.dy, cfg.eps_x, cfg.eps_y, cfg.cutoff);
  std::optional<double> oracle_value;
  std::optional<double> residual;
  bool passed = true;
  if (!cfg.no_oracle && cfg.n <= kOracleMaxSites && cfg.m_height <= 64) {
    const oracle::SpinOperatorSet ops(c, cfg.eps_y);
    oracle_value = oracle::oracle_correlation(ops, cfg.m_height, cfg.dx, cfg.dy, cfg.eps_x);
    residual = std::abs(r.value - *oracle_value);
    passed = *residual <= std::max(cfg.oracle_tolerance, r.tail_bound);
  }
  if (cfg.output == "csv") {
    write_csv(out, {"m", "dx", "dy", "eps_x", "eps_y", "value", "imag_residual", "tail_bound", "truncated",
                    "states_used", "oracle", "residual", "passed"},
              {{std::to_string(cfg.m_height), std::to_string(cfg.dx), std::to_string(cfg.dy),
                std::to_string(cfg.eps_x), std::to_string(cfg.eps_y), format_double(r.value),
                format_double(r.imag_residual), format_double(r.tail_bound), r.truncated ? "true" : "false",
                std::to_string(r.states_used), oracle_value ? format_double(*oracle_value) : "",
                residual ? format_double(*residual) : "", passed ? "true" : "false"}});
  } else {
    ordered_json j;
    j["command"] = "corr";
    ordered_json input = couplings_input(cfg);
    input["m"] = cfg.m_height;
    input["dx"] = cfg.dx;
    input["dy"] = cfg.dy;
    input["eps_x"] = cfg.eps_x;
    input["eps_y"] = cfg.eps_y;
    input["cutoff"] = cfg.cutoff ? ordered_json(*cfg.cutoff) : ordered_json(nullptr);
    j["input"] = input;
    j["value"] = r.value;
    j["imag_residual"] = r.imag_residual;
    j["tail_bound"] = r.tail_bound;
    j["truncated"] = r.truncated;
    j["states_used"] = r.states_used;
    j["warning"] = r.warning.empty() ? ordered_json(nullptr) : ordered_json(r.warning);
    j["oracle"] = oracle_value ? ordered_json(*oracle_value) : ordered_json(nullptr);
    j["agreement"] = residual ? ordered_json{{"residual", *residual},
                                             {"tolerance", cfg.oracle_tolerance},
                                             {"passed", passed}}
                              : ordered_json(nullptr);
    j["passed"] = passed;
    out << j.dump(2) << "\n";
  }
  return passed ? kExitOk : kExitVerification;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Couplings c(cfg.n, cfg.kx, cfg.ky);
  const Suite suite = parse_suite(cfg.suite);
  VerifyOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  const auto checks = verify_suite(suite, c, opts);
  bool passed = true;
  double worst = 0.0;
  for (const auto& ch : checks) {
    passed = passed && ch.passed;
    worst = std::max(worst, ch.max_residual);
  }
  if (cfg.output == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& ch : checks) {
      rows.push_back({"\"" + ch.name + "\"", format_double(ch.max_residual), format_double(ch.tolerance),
                      std::to_string(ch.samples), ch.passed ? "true" : "false"});
    }
    write_csv(out, {"check", "max_residual", "tolerance", "samples", "passed"}, rows);
  } else {
    ordered_json list = ordered_json::array();
    for (const auto& ch : checks) {
      list.push_back({{"name", ch.name},
                      {"max_residual", number_or_null(ch.max_residual)},
                      {"tolerance", ch.tolerance},
                      {"samples", ch.samples},
                      {"passed", ch.passed}});
    }
    ordered_json j;
    j["command"] = "verify";
    ordered_json input = couplings_input(cfg);
    input["suite"] = suite_name(suite);
    input["samples"] = cfg.samples;
    input["seed"] = cfg.seed;
    j["input"] = input;
    j["checks"] = list;
    j["max_residual"] = number_or_null(worst);
    j["tolerance"] = cfg.tolerance;
    j["passed"] = passed;
    out << j.dump(2) << "\n";
  }
  return passed ? kExitOk : kExitVerification;
}

void report_error(std::ostream& out, std::ostream& err, const RunConfig& cfg, const char* kind,
                  const std::string& message) {
  err << "isingff: " << kind << " error: " << message << "\n";
  if (cfg.output == "json") {
    ordered_json j;
    j["command"] = cfg.command;
    j["error"] = {{"kind", kind}, {"message", message}};
    out << j.dump(2) << "\n";
  }
}

void add_couplings(CLI::App* app, RunConfig& cfg) {
  app->add_option("--kx", cfg.kx, "Horizontal coupling Kx")->required();
  app->add_option("--ky", cfg.ky, "Vertical coupling Ky")->required();
  app->add_option("--n", cfg.n, "Lattice width N")->capture_default_str();
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--output", cfg.output, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--tolerance", cfg.tolerance, "Tolerance for identity and route checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0)) {
      err << "isingff: parse error: " << kToleranceEnv << " must be a positive number\n";
      return kExitParse;
    }
    cfg.tolerance = value;
  }

  CLI::App app{"Exact form factors and correlations of the 2D Ising model on a periodic lattice", "isingff"};
  app.require_subcommand(1);

  auto* params = app.add_subcommand("params", "Print derived coupling parameters");
  add_couplings(params, cfg);
  add_common(params, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "Print quasimomenta, dispersion and elliptic parameters");
  add_couplings(spectrum, cfg);
  add_common(spectrum, cfg);

  auto* ff = app.add_subcommand("ff", "Spin form factor <bra| s_site |ket>");
  add_couplings(ff, cfg);
  add_common(ff, cfg);
  ff->add_option("--site", cfg.site, "Spin site l")->capture_default_str();
  ff->add_option("--bra", cfg.bra, "Antiperiodic momentum indices, comma separated; repeat for a sweep");
  ff->add_option("--ket", cfg.ket, "Periodic momentum indices, comma separated; repeat for a sweep");
  ff->add_option("--oracle-tolerance", cfg.oracle_tolerance, "Tolerance for the oracle modulus")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ff->add_flag("--no-oracle", cfg.no_oracle, "Skip the transfer-matrix oracle");

  auto* corr = app.add_subcommand("corr", "Two-point correlation <s_{0,0} s_{dx,dy}> on an N x M torus");
  add_couplings(corr, cfg);
  add_common(corr, cfg);
  corr->add_option("--m", cfg.m_height, "Lattice height M")->capture_default_str();
  corr->add_option("--dx", cfg.dx, "Vertical separation")->capture_default_str();
  corr->add_option("--dy", cfg.dy, "Horizontal separation")->capture_default_str();
  corr->add_option("--eps-x", cfg.eps_x, "Boundary sign in the M direction")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  corr->add_option("--eps-y", cfg.eps_y, "Boundary sign in the N direction")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  corr->add_option("--cutoff", cfg.cutoff, "Particle-number cutoff");
  corr->add_option("--oracle-tolerance", cfg.oracle_tolerance, "Tolerance for the oracle value")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  corr->add_flag("--no-oracle", cfg.no_oracle, "Skip the transfer-matrix oracle");

  auto* verify = app.add_subcommand("verify", "Run an identity suite and report residuals");
  verify->add_option("suite", cfg.suite, "elliptic | cauchy | rotation | formfactor | all")
      ->check(CLI::IsMember({"elliptic", "cauchy", "rotation", "formfactor", "all"}))
      ->capture_default_str();
  add_couplings(verify, cfg);
  add_common(verify, cfg);
  verify->add_option("--samples", cfg.samples, "Random samples per identity")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Seed of the random points")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "isingff: parse error: " << e.what() << "\n";
    return kExitParse;
  }
  for (auto* sub : {params, spectrum, ff, corr, verify}) {
    if (sub->parsed()) {
      cfg.command = sub->get_name();
    }
  }

  try {
    if (cfg.command == "params") return cmd_params(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "ff") return cmd_ff(cfg, out);
    if (cfg.command == "corr") return cmd_corr(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const InputError& e) {
    report_error(out, err, cfg, "input", e.what());
    return kExitParse;
  } catch (const ResourceError& e) {
    report_error(out, err, cfg, "resource", e.what());
    return kExitResource;
  } catch (const AmbiguityError& e) {
    report_error(out, err, cfg, "verification", e.what());
    return kExitVerification;
  } catch (const Error& e) {
    report_error(out, err, cfg, "domain", e.what());
    return kExitDomain;
  }
}

}  // namespace isingff::cli
