#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>

#include "pstnet/cli.hpp"
#include "pstnet/coupling_synthesis.hpp"
#include "pstnet/error.hpp"
#include "pstnet/fock_transport.hpp"
#include "pstnet/gaussian_transport.hpp"
#include "pstnet/serialization.hpp"

namespace pstnet::cli {

namespace fs = std::filesystem;

namespace {

/// Flag values that cannot be interpreted; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double real_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_real(text);
  } catch (const InvalidParameter& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

CouplingProfile profile_flag(const std::string& text) {
  try {
    return parse_profile(text);
  } catch (const InvalidParameter& e) {
    throw UsageError(std::string("--profile: ") + e.what());
  }
}

int mode_flag(int label, int n_modes, const std::string& flag) {
  if (label < 1 || label > n_modes) {
    throw UsageError("--" + flag + " must be a mode label in 1.." + std::to_string(n_modes));
  }
  return label - 1;
}

std::pair<int, int> pair_flag(const std::string& text, int n_modes, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--" + flag + " expects two labels like 1,2");
  int a = 0;
  int b = 0;
  try {
    a = std::stoi(text.substr(0, comma));
    b = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw UsageError("--" + flag + " expects two labels like 1,2");
  }
  return {mode_flag(a, n_modes, flag), mode_flag(b, n_modes, flag)};
}

long long grid_count(double z_max, double dz) {
  if (!(z_max > 0.0) || !(dz > 0.0)) throw UsageError("--z-max and --dz must be positive");
  return static_cast<long long>(std::floor(z_max / dz * (1.0 + 1e-12))) + 1;
}

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream f(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + (dir_ / name).string() + " for writing");
    f << content;
  }

 private:
  fs::path dir_;
};

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  bool first = true;
  for (double v : values) {
    if (!first) row += ',';
    row += format_number(v);
    first = false;
  }
  row += '\n';
  return row;
}

Json network_json(const NetworkSpec& spec) {
  return {{"n_modes", spec.n_modes()}, {"profile", format_profile(spec.profile())}};
}

// ---- subcommand option sets -------------------------------------------------

struct NetworkOpts {
  int n = 0;
  std::string profile;
};

struct SpectrumOpts {
  NetworkOpts net;
  std::string tol;
};

struct TransportOpts {
  NetworkOpts net;
  int source = 1;
  std::string z_max = "pi";
  std::string dz;
};

struct PstCheckOpts {
  NetworkOpts net;
  int source = 1;
  std::string tol = "1e-9";
  std::string z_max;
  std::string dz;
};

struct CatOpts {
  NetworkOpts net;
  int source = 1;
  int target = 0;
  std::string alpha;
  std::string phi = "0";
  std::string z_max = "2pi";
  std::string dz;
};

struct TmsvOpts {
  NetworkOpts net;
  std::string w = "0.881374";
  std::string theta = "0";
  std::string pair = "1,2";
  std::string probe;
  std::string z_max = "pi";
  std::string dz;
};

struct EvanescentOpts {
  int n = 12;
  int range = 0;
  std::string mu;
  std::string kappa;
  std::string separation;
  int source = 1;
  int target = 0;
  std::string z_max = "5000";
  std::string dz;
};

struct SynthOpts {
  int n = 0;
  int m = 0;
  std::string c = "1";
  std::string delta_scale = "200";
  std::string dispersive_min = "10";
  std::string tol = "1e-9";
  int source = 1;
};

void add_network(CLI::App* sub, NetworkOpts& o) {
  sub->add_option("--n", o.n, "Number of waveguides N")->required();
  sub->add_option("--profile", o.profile, "uniform:C=..,R=.. | evanescent:mu=..,R=.. | custom:c1,c2,..")
      ->required();
}

NetworkSpec build_network(const NetworkOpts& o) { return NetworkSpec(o.n, profile_flag(o.profile)); }

double step_or_default(const std::string& text, const NetworkSpec& spec) {
  return text.empty() ? default_scan_step(spec) : real_flag(text, "dz");
}

int antipode_or(int label, const NetworkSpec& spec, int source, const std::string& flag) {
  if (label != 0) return mode_flag(label, spec.n_modes(), flag);
  if (spec.n_modes() % 2 != 0) throw UsageError("--" + flag + " is required when N is odd");
  return (source + spec.n_modes() / 2) % spec.n_modes();
}

// ---- subcommands ----------------------------------------------------------

void cmd_spectrum(const SpectrumOpts& o, const Output& files, std::ostream& out) {
  const auto spec = build_network(o.net);
  const auto spectrum = dispersion(spec);
  const double tol = o.tol.empty() ? default_degeneracy_tolerance(spectrum) : real_flag(o.tol, "tol");
  const auto histogram = degeneracy_histogram(spectrum, tol);

  std::string csv = "p,lambda_p\n";
  for (int p = 0; p < spectrum.n_modes(); ++p) {
    csv += std::to_string(p) + ',' + format_number(spectrum.eigenvalues[static_cast<std::size_t>(p)]) + '\n';
  }
  files.write("spectrum.csv", csv);

  Json j = to_json(histogram);
  j.update(network_json(spec));
  const auto text = dump_json(j);
  files.write("spectrum_histogram.json", text);
  out << text;
}

void cmd_transport(const TransportOpts& o, const Output& files, std::ostream& out) {
  const auto spec = build_network(o.net);
  const int n = spec.n_modes();
  const int source = mode_flag(o.source, n, "source");
  const double z_max = real_flag(o.z_max, "z-max");
  const double dz = step_or_default(o.dz, spec);
  const auto count = grid_count(z_max, dz);

  std::vector<double> best(static_cast<std::size_t>(n), -1.0);
  std::vector<double> best_z(static_cast<std::size_t>(n), 0.0);
  std::string csv = "z,mode,probability\n";
  for (long long i = 0; i < count; ++i) {
    const double z = static_cast<double>(i) * dz;
    const auto u = propagator(spec, z);
    for (int j = 0; j < n; ++j) {
      const double prob = std::norm(u.matrix(j, source));
      csv += format_number(z) + ',' + std::to_string(j + 1) + ',' + format_number(prob) + '\n';
      if (prob > best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = prob;
        best_z[static_cast<std::size_t>(j)] = z;
      }
    }
  }
  files.write("transport.csv", csv);

  Json modes = Json::array();
  for (int j = 0; j < n; ++j) {
    modes.push_back({{"mode", j + 1},
                     {"max_probability", best[static_cast<std::size_t>(j)]},
                     {"z_at_max", best_z[static_cast<std::size_t>(j)]}});
  }
  Json j = network_json(spec);
  j.update({{"source", source + 1}, {"z_max", z_max}, {"dz", dz}, {"samples", count}, {"modes", modes}});
  const auto text = dump_json(j);
  files.write("transport.json", text);
  out << text;
}

void cmd_pst_check(const PstCheckOpts& o, const Output& files, std::ostream& out) {
  const auto spec = build_network(o.net);
  PstCheckOptions options;
  options.tolerance = real_flag(o.tol, "tol");
  if (!o.z_max.empty()) options.z_max = real_flag(o.z_max, "z-max");
  if (!o.dz.empty()) options.dz = real_flag(o.dz, "dz");
  const int source = mode_flag(o.source, spec.n_modes(), "source");
  const auto report = check_pst(spec, source, options);

  Json j = to_json(report);
  j.update(network_json(spec));
  const auto text = dump_json(j);
  files.write("pst_check.json", text);
  out << text;
}

void cmd_cat(const CatOpts& o, const Output& files, std::ostream& out) {
  const auto spec = build_network(o.net);
  const int source = mode_flag(o.source, spec.n_modes(), "source");
  const int target = antipode_or(o.target, spec, source, "target");
  const CatState cat(real_flag(o.alpha, "alpha"), real_flag(o.phi, "phi"));
  const double z_max = real_flag(o.z_max, "z-max");
  const double dz = step_or_default(o.dz, spec);
  grid_count(z_max, dz);

  const auto scan = cat_fidelity_scan(spec, source, target, cat, z_max, dz);
  std::string csv = "z,fidelity\n";
  for (const auto& pt : scan.trace) csv += csv_row({pt.z, pt.value});
  files.write("cat.csv", csv);

  Json j = network_json(spec);
  j.update({{"alpha", cat.alpha()},
            {"phi", cat.phi()},
            {"normalization", cat.normalization()},
            {"source", source + 1},
            {"target", target + 1},
            {"max_fidelity", scan.max_value},
            {"z_at_max", scan.z_at_max},
            {"pst_closed_form", pst_cat_fidelity(cat.alpha(), cat.phi())}});
  if (const auto c = collapse_coupling(spec)) {
    const double z_pst = pst_distance(*c);
    j["z_pst"] = z_pst;
    j["fidelity_at_zpst"] = cat_fidelity(spec, source, target, cat, z_pst);
  } else {
    j["z_pst"] = nullptr;
    j["fidelity_at_zpst"] = nullptr;
  }
  const auto text = dump_json(j);
  files.write("cat.json", text);
  out << text;
}

void cmd_tmsv(const TmsvOpts& o, const Output& files, std::ostream& out) {
  const auto spec = build_network(o.net);
  const int n = spec.n_modes();
  const auto [m1, m2] = pair_flag(o.pair, n, "pair");
  std::pair<int, int> probe;
  if (o.probe.empty()) {
    if (n % 2 != 0) throw UsageError("--probe is required when N is odd");
    probe = {(m1 + n / 2) % n, (m2 + n / 2) % n};
  } else {
    probe = pair_flag(o.probe, n, "probe");
  }
  TmsvParams params;
  params.w = real_flag(o.w, "w");
  params.theta = real_flag(o.theta, "theta");
  params.mode_m = m1;
  params.mode_n = m2;
  const auto input = tmsv_covariance(params, n);
  const double z_max = real_flag(o.z_max, "z-max");
  const double dz = step_or_default(o.dz, spec);
  const auto count = grid_count(z_max, dz);

  auto label = [](std::pair<int, int> p) { return std::to_string(p.first + 1) + std::to_string(p.second + 1); };
  const std::string in_l = label({m1, m2});
  const std::string pr_l = label(probe);
  std::string csv = "z,S_Q_" + in_l + ",S_P_" + in_l + ",S_Q_" + pr_l + ",S_P_" + pr_l + "\n";

  double max_defect = 0.0;
  double min_nu = std::numeric_limits<double>::infinity();
  double best_probe = std::numeric_limits<double>::infinity();
  double best_probe_z = 0.0;
  for (long long i = 0; i < count; ++i) {
    const double z = static_cast<double>(i) * dz;
    const auto m = symplectic_from_propagator(propagator(spec, z));
    max_defect = std::max(max_defect, symplectic_defect(m.matrix));
    const auto v = evolve_covariance(input, m);
    min_nu = std::min(min_nu, min_symplectic_eigenvalue(v));
    const double sq_probe = squeezing_factor(v, probe.first, probe.second, Quadrature::kQ);
    if (sq_probe < best_probe) {
      best_probe = sq_probe;
      best_probe_z = z;
    }
    csv += csv_row({z, squeezing_factor(v, m1, m2, Quadrature::kQ), squeezing_factor(v, m1, m2, Quadrature::kP),
                    sq_probe, squeezing_factor(v, probe.first, probe.second, Quadrature::kP)});
  }
  files.write("tmsv.csv", csv);

  Json j = network_json(spec);
  j.update({{"w", params.w},
            {"theta", params.theta},
            {"pair", {m1 + 1, m2 + 1}},
            {"probe", {probe.first + 1, probe.second + 1}},
            {"input_S_Q", squeezing_factor(input, m1, m2, Quadrature::kQ)},
            {"input_S_P", squeezing_factor(input, m1, m2, Quadrature::kP)},
            {"min_probe_S_Q", best_probe},
            {"z_at_min_probe_S_Q", best_probe_z},
            {"max_symplectic_defect", max_defect},
            {"min_symplectic_eigenvalue", min_nu},
            {"samples", count}});
  const auto text = dump_json(j);
  files.write("tmsv.json", text);
  out << text;
}

void cmd_evanescent(const EvanescentOpts& o, const Output& files, std::ostream& out) {
  double mu = 0.0;
  if (!o.mu.empty()) {
    if (!o.kappa.empty() || !o.separation.empty()) throw UsageError("give either --mu or --kappa/--separation");
    mu = real_flag(o.mu, "mu");
  } else if (!o.kappa.empty() && !o.separation.empty()) {
    mu = mu_from_separation(real_flag(o.kappa, "kappa"), real_flag(o.separation, "separation"));
  } else {
    throw UsageError("evanescent needs --mu or both --kappa and --separation");
  }
  const NetworkSpec spec(o.n, evanescent_profile(mu, o.range > 0 ? o.range : o.n / 2));
  const int source = mode_flag(o.source, spec.n_modes(), "source");
  const int target = antipode_or(o.target, spec, source, "target");
  const double z_max = real_flag(o.z_max, "z-max");
  const double dz = step_or_default(o.dz, spec);
  grid_count(z_max, dz);

  const auto scan = transfer_scan(spec, source, target, z_max, dz);
  std::string csv = "z,probability\n";
  for (const auto& pt : scan.trace) csv += csv_row({pt.z, pt.value});
  files.write("evanescent.csv", csv);

  Json j = network_json(spec);
  j.update({{"mu", mu},
            {"range", spec.profile().range()},
            {"source", source + 1},
            {"target", target + 1},
            {"z_max", z_max},
            {"dz", dz},
            {"max_transfer", scan.max_value},
            {"z_at_max", scan.z_at_max},
            {"z_at_max_over_unit_zpst", scan.z_at_max / pst_distance(1.0)}});
  const auto text = dump_json(j);
  files.write("evanescent.json", text);
  out << text;
}

/// Returns false when verification was refused.
bool cmd_synth(const SynthOpts& o, const Output& files, std::ostream& out, std::ostream& err) {
  SynthesisProblem problem;
  problem.n_modes = o.n;
  problem.aux_pairs = o.m;
  problem.coupling = real_flag(o.c, "c");
  problem.tolerance = real_flag(o.tol, "tol");
  const auto solution = physical_parameters(solve_weights(problem), real_flag(o.delta_scale, "delta-scale"),
                                            real_flag(o.dispersive_min, "dispersive-min"));
  Json j = to_json(solution);
  bool verified = true;
  try {
    j["pst_report"] = to_json(verify_synthesis(solution, mode_flag(o.source, o.n, "source")));
    j["verification_error"] = nullptr;
  } catch (const InconsistentInput& e) {
    j["pst_report"] = nullptr;
    j["verification_error"] = e.what();
    err << "pstnet: " << e.what() << '\n';
    verified = false;
  }
  const auto text = dump_json(j);
  files.write("synth.json", text);
  out << text;
  return verified;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

/// Splices config-file flags after the subcommand name, skipping any flag
/// already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
      break;
    }
  }
  if (path.empty()) return args;
  const auto flags = read_config_flags(path);
  std::vector<std::string> extra;
  for (std::size_t i = 0; i + 1 < flags.size(); i += 2) {
    if (!has_flag(args, flags[i])) {
      extra.push_back(flags[i]);
      extra.push_back(flags[i + 1]);
    }
  }
  static const std::vector<std::string> kSubcommands = {"spectrum", "transport", "pst-check", "cat",
                                                        "tmsv",     "evanescent", "synth"};
  auto at = std::find_first_of(args.begin(), args.end(), kSubcommands.begin(), kSubcommands.end());
  if (at != args.end()) ++at;
  args.insert(at, extra.begin(), extra.end());
  return args;
}

}  // namespace

std::vector<std::string> read_config_flags(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  std::vector<std::string> flags;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    flags.push_back(key);
    flags.push_back(trim(line.substr(eq + 1)));
  }
  return flags;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect-state-transfer simulator for circulant waveguide rings"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_dir;
  app.add_option("--output-dir", output_dir, std::string("Directory for data files (default $") + kOutputDirEnv + " or .)");
  app.add_option("--config", "Key = value file mirroring the flags; flags win");

  SpectrumOpts spectrum;
  auto* s_spectrum = app.add_subcommand("spectrum", "Fourier-mode spectrum and degeneracy histogram");
  add_network(s_spectrum, spectrum.net);
  s_spectrum->add_option("--tol", spectrum.tol, "Degeneracy merge tolerance");

  TransportOpts transport;
  auto* s_transport = app.add_subcommand("transport", "Single-photon occupations N_j(z)");
  add_network(s_transport, transport.net);
  s_transport->add_option("--source", transport.source, "Input mode label (1-based)");
  s_transport->add_option("--z-max", transport.z_max, "Scan end (accepts pi multiples)");
  s_transport->add_option("--dz", transport.dz, "Scan step");

  PstCheckOpts pst;
  auto* s_pst = app.add_subcommand("pst-check", "Antipodal perfect-state-transfer check");
  add_network(s_pst, pst.net);
  s_pst->add_option("--source", pst.source, "Input mode label (1-based)");
  s_pst->add_option("--tol", pst.tol, "Accept |U|^2 >= 1 - tol");
  s_pst->add_option("--z-max", pst.z_max, "Scan end for max_transfer");
  s_pst->add_option("--dz", pst.dz, "Scan step");

  CatOpts cat;
  auto* s_cat = app.add_subcommand("cat", "Schroedinger-cat transfer fidelity");
  add_network(s_cat, cat.net);
  s_cat->add_option("--source", cat.source, "Input mode label (1-based)");
  s_cat->add_option("--target", cat.target, "Target mode label (default antipode)");
  s_cat->add_option("--alpha", cat.alpha, "Real coherent amplitude")->required();
  s_cat->add_option("--phi", cat.phi, "Relative phase (0 even, pi/2 Yurke-Stoler, pi odd)");
  s_cat->add_option("--z-max", cat.z_max, "Scan end");
  s_cat->add_option("--dz", cat.dz, "Scan step");

  TmsvOpts tmsv;
  auto* s_tmsv = app.add_subcommand("tmsv", "Two-mode squeezed vacuum squeezing factors");
  add_network(s_tmsv, tmsv.net);
  s_tmsv->add_option("--w", tmsv.w, "Squeezing strength");
  s_tmsv->add_option("--theta", tmsv.theta, "Squeezing phase");
  s_tmsv->add_option("--pair", tmsv.pair, "Input mode pair, e.g. 1,2");
  s_tmsv->add_option("--probe", tmsv.probe, "Probed pair (default input pair shifted by N/2)");
  s_tmsv->add_option("--z-max", tmsv.z_max, "Scan end");
  s_tmsv->add_option("--dz", tmsv.dz, "Scan step");

  EvanescentOpts evan;
  auto* s_evan = app.add_subcommand("evanescent", "Transfer under evanescent couplings C_r = mu^r");
  s_evan->add_option("--n", evan.n, "Number of waveguides");
  s_evan->add_option("--range", evan.range, "Coupling range R (default N/2)");
  s_evan->add_option("--mu", evan.mu, "Decay factor in (0, 1)");
  s_evan->add_option("--kappa", evan.kappa, "Decay constant, with --separation");
  s_evan->add_option("--separation", evan.separation, "Waveguide spacing d, mu = exp(-kappa d)");
  s_evan->add_option("--source", evan.source, "Input mode label (1-based)");
  s_evan->add_option("--target", evan.target, "Target mode label (default antipode)");
  s_evan->add_option("--z-max", evan.z_max, "Scan end");
  s_evan->add_option("--dz", evan.dz, "Scan step (default 0.01/C_1)");

  SynthOpts synth;
  auto* s_synth = app.add_subcommand("synth", "Auxiliary-mode synthesis of the PST coupling profile");
  s_synth->add_option("--n", synth.n, "Number of waveguides")->required();
  s_synth->add_option("--m", synth.m, "Auxiliary mode pairs")->required();
  s_synth->add_option("--c", synth.c, "Target coupling C");
  s_synth->add_option("--delta-scale", synth.delta_scale, "Common detuning magnitude");
  s_synth->add_option("--dispersive-min", synth.dispersive_min, "Smallest acceptable |Delta|/g");
  s_synth->add_option("--tol", synth.tol, "Constraint residual tolerance");
  s_synth->add_option("--source", synth.source, "Mode used for the PST check (1-based)");

  try {
    std::vector<std::string> args;
    try {
      args = merge_config(raw_args);
    } catch (const UsageError& e) {
      err << "pstnet: " << e.what() << '\n';
      return kExitUsage;
    }
    std::vector<char*> argv;
    std::string program = "pstnet";
    argv.push_back(program.data());
    for (auto& a : args) argv.push_back(a.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    if (output_dir.empty()) {
      const char* env = std::getenv(kOutputDirEnv);
      output_dir = (env && *env) ? env : ".";
    }
    const Output files{fs::path(output_dir)};

    if (s_spectrum->parsed()) cmd_spectrum(spectrum, files, out);
    if (s_transport->parsed()) cmd_transport(transport, files, out);
    if (s_pst->parsed()) cmd_pst_check(pst, files, out);
    if (s_cat->parsed()) cmd_cat(cat, files, out);
    if (s_tmsv->parsed()) cmd_tmsv(tmsv, files, out);
    if (s_evan->parsed()) cmd_evanescent(evan, files, out);
    if (s_synth->parsed() && !cmd_synth(synth, files, out, err)) return kExitDomain;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "pstnet: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "pstnet: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "pstnet: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pstnet::cli
