#include "fockzero/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "fockzero/acceptance.hpp"
#include "fockzero/density.hpp"
#include "fockzero/error.hpp"
#include "fockzero/format.hpp"

namespace fockzero {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& raw, const char* what) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(std::string("cannot parse ") + what + " from '" + raw + "'");
  }
  return v;
}

template <class Int>
Int parse_integer(const std::string& raw, const char* what) {
  const std::string s = trim(raw);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(std::string("cannot parse ") + what + " from '" + raw + "'");
  }
  return v;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "alpha") {
    cfg.alpha = parse_real(value, "alpha");
  } else if (key == "R" || key == "r_shift") {
    cfg.r_shift = parse_real(value, "R");
  } else if (key == "p") {
    cfg.p_exponents = parse_real_list(value);
  } else if (key == "rho_max") {
    cfg.rho_max = parse_real(value, "rho_max");
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(value, "seed");
  } else if (key == "out") {
    cfg.output_dir = trim(value);
  } else if (key == "points_per_annulus") {
    cfg.points_per_annulus = parse_integer<int>(value, "points_per_annulus");
  } else if (key == "tol") {
    cfg.policy.tol = parse_real(value, "tol");
  } else if (key == "m_min") {
    cfg.policy.m_min = parse_integer<int>(value, "m_min");
  } else if (key == "max_doublings") {
    cfg.policy.max_doublings = parse_integer<int>(value, "max_doublings");
  } else if (key == "radial_step") {
    cfg.quadrature.radial_step = parse_real(value, "radial_step");
  } else if (key == "angular_step") {
    cfg.quadrature.angular_step = parse_real(value, "angular_step");
  } else if (key == "angular_offset") {
    cfg.quadrature.angular_offset = parse_real(value, "angular_offset");
  } else {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
}

void write_csv_file(const fs::path& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  write_csv(f, columns, rows);
  if (!f) throw InvalidArgument("write failed for " + path.string());
}

fs::path prepare_output_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InvalidArgument("output_dir is not writable: " + cfg.output_dir);
  return dir;
}

std::string flag(bool b) { return b ? "true" : "false"; }

int cmd_eval(const RunConfig& cfg, const std::string& target, const std::vector<std::string>& raw_points,
             bool write_file, std::ostream& out) {
  std::vector<Complex> pts;
  for (const auto& s : raw_points) pts.push_back(parse_point(s));

  const LatticeSpec spec = LatticeSpec::from_alpha(cfg.alpha, cfg.r_shift);
  std::vector<std::vector<std::string>> rows;
  for (const Complex z : pts) {
    std::string status = "ok";
    WeightedLogValue v{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), false};
    try {
      if (target == "sigma") {
        v = log_sigma(spec, z, cfg.policy);
      } else if (target == "modified") {
        v = log_modified_sigma_direct(spec, z, cfg.policy);
      } else {
        v = log_psi(cfg.r_shift, z, cfg.policy);
      }
    } catch (const DomainPole&) {
      status = "domain_pole";
    } catch (const TruncationNotConverged&) {
      status = "not_converged";
    }
    rows.push_back({format_double(z.real()), format_double(z.imag()), format_double(v.log_mag),
                    format_double(v.err_est), flag(v.at_zero), status});
  }
  const std::vector<std::string> columns{"z_re", "z_im", "log_mag", "err_est", "at_zero", "status"};
  write_csv(out, columns, rows);
  if (write_file) write_csv_file(prepare_output_dir(cfg) / ("eval_" + target + ".csv"), columns, rows);
  return kExitOk;
}

int cmd_norm(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = prepare_output_dir(cfg);
  const LatticeSpec spec = LatticeSpec::from_alpha(cfg.alpha, cfg.r_shift);
  const auto traces =
      norm_traces(spec, cfg.p_exponents, cfg.resolved_rho_max(), cfg.quadrature, cfg.policy, true);

  std::vector<std::vector<std::string>> trace_rows;
  std::vector<std::vector<std::string>> summary_rows;
  std::size_t worst_under = 0;
  for (const NormTrace& tr : traces) {
    std::size_t under = 0;
    for (std::size_t i = 0; i < tr.annuli.size(); ++i) {
      const AnnulusMass& m = tr.annuli[i];
      if (m.under_resolved) ++under;
      trace_rows.push_back({format_double(tr.p), format_double(m.r_in), format_double(m.r_out),
                            format_double(m.mass), format_double(m.refined_mass), format_double(m.relative_change),
                            flag(m.under_resolved), format_double(tr.cumulative[i])});
    }
    worst_under = std::max(worst_under, under);
    const double exponent = growth_exponent(tr);
    const Verdict verdict = classify_growth(exponent);
    summary_rows.push_back({format_double(tr.p), format_double(exponent), std::string(to_string(verdict)),
                            std::to_string(under)});
    out << "p=" << format_double(tr.p) << " exponent=" << format_double(exponent)
        << " verdict=" << to_string(verdict) << " under_resolved_annuli=" << under << '\n';
  }
  write_csv_file(dir / "norm_trace.csv",
                 {"p", "r_in", "r_out", "mass", "refined_mass", "relative_change", "under_resolved", "cumulative"},
                 trace_rows);
  write_csv_file(dir / "norm_summary.csv", {"p", "exponent", "verdict", "under_resolved_annuli"}, summary_rows);
  return worst_under >= 2 ? kExitNumericalAdvisory : kExitOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = prepare_output_dir(cfg);
  const double a = cfg.pitch();
  std::vector<double> ladder;
  for (double rho = 8.0 * a; rho <= cfg.resolved_rho_max() * (1.0 + 1e-12); rho *= 2.0) ladder.push_back(rho);

  std::vector<std::vector<std::string>> profile_rows;
  std::vector<std::vector<std::string>> estimate_rows;
  const LatticeSpec spec = LatticeSpec::from_alpha(cfg.alpha, cfg.r_shift);
  for (Lattice lat : {Lattice::square, Lattice::perturbed}) {
    const char* name = lat == Lattice::square ? "square" : "perturbed";
    const DensityReport rep = density_profile(spec, lat, ladder, 4.0 * a, 0.25 * a);
    for (std::size_t i = 0; i < rep.rho_ladder.size(); ++i) {
      profile_rows.push_back({name, format_double(rep.rho_ladder[i]), format_double(rep.sup_ratio[i]),
                              format_double(rep.inf_ratio[i])});
    }
    const DensityEstimate d = uniform_density_estimate(rep);
    estimate_rows.push_back({name, format_double(d.d_plus), format_double(d.d_minus),
                             format_double(cfg.alpha / std::numbers::pi)});
    out << name << " d_plus=" << format_double(d.d_plus) << " d_minus=" << format_double(d.d_minus)
        << " alpha/pi=" << format_double(cfg.alpha / std::numbers::pi) << '\n';
  }
  write_csv_file(dir / "density_profile.csv", {"lattice", "rho", "sup_ratio", "inf_ratio"}, profile_rows);
  write_csv_file(dir / "density_estimate.csv", {"lattice", "d_plus", "d_minus", "alpha_over_pi"}, estimate_rows);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir = prepare_output_dir(cfg);
  AcceptanceConfig acc;
  acc.alpha = cfg.alpha;
  acc.r_shift = cfg.r_shift;
  acc.seed = cfg.seed;
  acc.rho_max = cfg.resolved_rho_max() / cfg.pitch();
  acc.points_per_annulus = cfg.points_per_annulus;
  acc.policy = cfg.policy;
  acc.quadrature = cfg.quadrature;

  const std::vector<CriterionResult> results = run_acceptance(acc);
  std::ostringstream summary;
  bool all_pass = true;
  for (const CriterionResult& r : results) {
    for (const Table& t : r.tables) write_csv_file(dir / ("verify_" + t.name + ".csv"), t.columns, t.rows);
    for (const Assertion& a : r.assertions) {
      summary << a.name << ',' << format_double(a.value) << ',' << (a.at_least ? ">=" : "<=")
              << format_double(a.bound) << ',' << (a.pass ? "pass" : "fail") << '\n';
    }
    all_pass = all_pass && r.pass();
    out << (r.pass() ? "PASS " : "FAIL ") << "criterion " << r.id << ": " << r.title << '\n';
  }
  std::ofstream f(dir / "summary.txt", std::ios::binary | std::ios::trunc);
  f << summary.str();
  if (!f) throw InvalidArgument("cannot write summary.txt in " + cfg.output_dir);
  return all_pass ? kExitOk : kExitAssertionFailed;
}

}  // namespace

void RunConfig::validate() const {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha > 0 violated");
  if (!(r_shift > 0.0)) throw InvalidArgument("r_shift > 0 violated");
  if (p_exponents.empty()) throw InvalidArgument("at least one p exponent is required");
  for (double p : p_exponents) {
    if (!(p > 0.0)) throw InvalidArgument("p > 0 violated");
  }
  if (rho_max && !(*rho_max > 0.0)) throw InvalidArgument("rho_max > 0 violated");
  if (points_per_annulus <= 0) throw InvalidArgument("points_per_annulus > 0 violated");
  if (output_dir.empty()) throw InvalidArgument("output_dir must not be empty");
  policy.validate();
  quadrature.validate();
}

double RunConfig::pitch() const { return std::sqrt(std::numbers::pi / alpha); }

double RunConfig::resolved_rho_max() const { return rho_max ? *rho_max : 32.0 * pitch(); }

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item, "real list entry"));
  if (out.empty()) throw InvalidArgument("empty list of reals");
  return out;
}

Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("point '" + text + "' is not of the form re,im");
  return {parse_real(text.substr(0, comma), "real part"), parse_real(text.substr(comma + 1), "imaginary part")};
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_key(cfg, trim(t.substr(0, eq)), t.substr(eq + 1));
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for Weierstrass sigma products on perturbed square lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string alpha_s, r_s, p_s, rho_s, seed_s, config_path, out_dir;
  CLI::Option* o_alpha = app.add_option("--alpha", alpha_s, "Gaussian weight alpha > 0 (default pi)");
  CLI::Option* o_r = app.add_option("--R", r_s, "real-axis shift R > 0 (default 0.75)");
  CLI::Option* o_p = app.add_option("--p", p_s, "comma-separated norm exponents (default 2)");
  CLI::Option* o_rho = app.add_option("--rho-max", rho_s, "outer radius for norm and density (default 32a)");
  CLI::Option* o_seed = app.add_option("--seed", seed_s, "seed for quasi-random scans (default 7)");
  app.add_option("--config", config_path, "key=value configuration file; flags override it");
  CLI::Option* o_out = app.add_option("--out", out_dir, "output directory");

  std::string target;
  std::vector<std::string> points;
  CLI::App* eval = app.add_subcommand("eval", "evaluate log-magnitudes at points given as re,im");
  eval->add_option("target", target, "sigma | modified | psi")
      ->required()
      ->check(CLI::IsMember({"sigma", "modified", "psi"}));
  eval->add_option("points", points, "points re,im")->required();
  CLI::App* norm = app.add_subcommand("norm", "dyadic norm traces and growth verdicts");
  CLI::App* density = app.add_subcommand("density", "density profiles of both lattices");
  CLI::App* verify = app.add_subcommand("verify", "run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw InvalidArgument("cannot read config file " + config_path);
      std::stringstream text;
      text << f.rdbuf();
      apply_config_text(cfg, text.str());
    }
    if (o_alpha->count()) apply_key(cfg, "alpha", alpha_s);
    if (o_r->count()) apply_key(cfg, "R", r_s);
    if (o_p->count()) apply_key(cfg, "p", p_s);
    if (o_rho->count()) apply_key(cfg, "rho_max", rho_s);
    if (o_seed->count()) apply_key(cfg, "seed", seed_s);
    if (o_out->count()) apply_key(cfg, "out", out_dir);
    cfg.validate();
  } catch (const Error& e) {
    err << "fockzero: configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*eval) return cmd_eval(cfg, target, points, o_out->count() > 0 || cfg.output_dir != ".", out);
    if (*norm) return cmd_norm(cfg, out);
    if (*density) return cmd_density(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "fockzero: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InsufficientAnnuli& e) {
    err << "fockzero: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InsufficientRadii& e) {
    err << "fockzero: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const TruncationNotConverged& e) {
    err << "fockzero: " << e.what() << '\n';
    return kExitNumericalAdvisory;
  } catch (const std::exception& e) {
    err << "fockzero: " << e.what() << '\n';
    return kExitAssertionFailed;
  }
  return kExitConfigError;
}

}  // namespace fockzero
