// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pstnet/cli.hpp"
#include "pstnet/coupling_synthesis.hpp"
#include "pstnet/fock_transport.hpp"
#include "pstnet/gaussian_transport.hpp"
#include "pstnet/spectral.hpp"

using namespace pstnet;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double max_dev(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Outcome spectral_collapse() {
  Outcome o;
  for (int n : {8, 12, 16}) {
    std::vector<double> expected(static_cast<std::size_t>(n / 2 - 1), -2.0);
    expected.insert(expected.end(), static_cast<std::size_t>(n / 2), 0.0);
    expected.push_back(n - 2.0);
    const double d = max_dev(dispersion(NetworkSpec(n, uniform_profile(1.0, n / 2 - 1))).sorted(), expected);
    o.require(d < 1e-10, "N=" + std::to_string(n) + " deviation " + num(d));
  }
  return o;
}

Outcome opposite_site() {
  Outcome o;
  for (int n : {4, 8, 12, 16}) {
    const NetworkSpec spec(n, uniform_profile(1.0, n / 2));
    std::vector<double> expected(static_cast<std::size_t>(n - 1), -1.0);
    expected.push_back(n - 1.0);
    const double d = max_dev(dispersion(spec).sorted(), expected);
    o.require(d < 1e-10, "N=" + std::to_string(n) + " spectrum deviation " + num(d));
    const TransitionAmplitude amp(spec, n / 2, 0);
    const auto scan = scan_maximum([&](double z) { return std::abs(amp(z)); }, 50.0, 0.01);
    o.require(scan.max_value <= 2.0 / n + 1e-9, "N=" + std::to_string(n) + " cross amplitude " + num(scan.max_value));
  }
  return o;
}

Outcome single_photon_pst() {
  Outcome o;
  const auto u8 = propagator(NetworkSpec(8, uniform_profile(1.0, 3)), kPi / 2).matrix;
  o.require(std::abs(std::norm(u8(4, 0)) - 1.0) < 1e-10, "N=8 transfer " + num(std::norm(u8(4, 0))));
  o.require(std::abs(u8(4, 0) - std::complex<double>(-1.0, 0.0)) < 1e-10, "N=8 amplitude is not -1");
  const auto n8 = photon_numbers(NetworkSpec(8, uniform_profile(1.0, 3)), 0, kPi / 2);
  const auto n12 = photon_numbers(NetworkSpec(12, uniform_profile(1.0, 5)), 0, kPi / 2);
  o.require(std::abs(n12[6] - 1.0) < 1e-10, "N=12 transfer " + num(n12[6]));
  for (int j = 0; j < 8; ++j) {
    if (j != 4) o.require(n8[static_cast<std::size_t>(j)] < 1e-10, "N=8 leak to mode " + std::to_string(j + 1));
  }
  for (int j = 0; j < 12; ++j) {
    if (j != 6) o.require(n12[static_cast<std::size_t>(j)] < 1e-10, "N=12 leak to mode " + std::to_string(j + 1));
  }
  return o;
}

Outcome ring_size_necessity() {
  Outcome o;
  const NetworkSpec spec(10, uniform_profile(1.0, 4));
  const TransitionAmplitude amp(spec, 5, 0);
  const double at_half_pi = std::norm(amp(kPi / 2));
  o.require(std::abs(at_half_pi - 0.64) < 1e-10, "transfer at pi/2 " + num(at_half_pi));
  const auto scan = transfer_scan(spec, 0, 5, 50.0, default_scan_step(spec));
  o.require(scan.max_value < 1.0 - 1e-3, "scan max " + num(scan.max_value));
  o.detail = o.ok ? "max " + num(scan.max_value) + " at z=" + num(scan.z_at_max) : o.detail;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 16)(rng);
    const int r = std::uniform_int_distribution<int>(1, n / 2)(rng);
    std::vector<double> c(static_cast<std::size_t>(r));
    for (auto& x : c) x = std::uniform_real_distribution<double>(-1.5, 1.5)(rng);
    const NetworkSpec spec(n, custom_profile(c));
    const double z = std::uniform_real_distribution<double>(0.1, 5.0)(rng);
    const auto u = propagator(spec, z).matrix;
    const int steps = 20 * min_oracle_steps(spec, z);
    for (int l = 0; l < n; ++l) {
      const auto col = ode_oracle(spec, Eigen::VectorXcd::Unit(n, l), z, steps);
      worst = std::max(worst, (col - u.col(l)).cwiseAbs().maxCoeff());
    }
  }
  o.require(worst < 1e-6, "max elementwise difference " + num(worst));
  if (o.ok) o.detail = "max difference " + num(worst);
  return o;
}

Outcome cat_states() {
  Outcome o;
  const NetworkSpec spec(12, uniform_profile(1.0, 5));
  const double z_pst = pst_distance(1.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double phi : {0.0, kPi}) {
      const double f = cat_fidelity(spec, 0, 6, CatState(alpha, phi), z_pst);
      o.require(std::abs(f - 1.0) < 1e-10, "alpha=" + num(alpha) + " phi=" + num(phi) + " F=" + num(f));
    }
    const double ys = cat_fidelity(spec, 0, 6, CatState(alpha, kPi / 2), z_pst);
    o.require(std::abs(ys - std::exp(-4 * alpha * alpha)) < 1e-10, "YS alpha=" + num(alpha) + " F=" + num(ys));
  }
  const auto a = cat_fidelity_scan(spec, 0, 6, CatState(1.0 / std::sqrt(2.0), kPi / 2), 2 * kPi, 0.01);
  const auto b = cat_fidelity_scan(spec, 0, 6, CatState(0.5, kPi / 2), 2 * kPi, 0.01);
  o.require(std::abs(a.max_value - 0.36) <= 0.05, "YS alpha=1/sqrt2 max " + num(a.max_value));
  o.require(std::abs(b.max_value - 0.6) <= 0.05, "YS alpha=1/2 max " + num(b.max_value));
  if (o.ok) o.detail = "YS maxima " + num(a.max_value) + ", " + num(b.max_value);
  return o;
}

Outcome tmsv_transfer() {
  Outcome o;
  const double w = 0.881374;
  const NetworkSpec spec(8, uniform_profile(1.0, 3));
  const auto input = tmsv_covariance({w, 0.0, 0, 1}, 8);
  const double s_in_q = squeezing_factor(input, 0, 1, Quadrature::kQ);
  const double s_in_p = squeezing_factor(input, 0, 1, Quadrature::kP);
  o.require(std::abs(s_in_q - (std::exp(-2 * w) - 1) / 2) < 1e-10, "input S_Q " + num(s_in_q));

  double worst_defect = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double z = kPi * k / 200;
    worst_defect = std::max(worst_defect, symplectic_defect(symplectic_from_propagator(propagator(spec, z)).matrix));
  }
  o.require(worst_defect < 1e-10, "symplectic defect " + num(worst_defect));

  const auto out = evolve_covariance(input, symplectic_from_propagator(propagator(spec, kPi / 2)));
  o.require(std::abs(squeezing_factor(out, 4, 5, Quadrature::kQ) - s_in_q) < 1e-8, "S_Q_56 mismatch");
  o.require(std::abs(squeezing_factor(out, 4, 5, Quadrature::kP) - s_in_p) < 1e-8, "S_P_56 mismatch");
  o.require(std::abs(squeezing_factor(out, 0, 1, Quadrature::kQ)) < 1e-8, "S_Q_12 did not return to 0");
  if (o.ok) o.detail = "S_Q_12(0)=" + num(s_in_q);
  return o;
}

Outcome evanescent() {
  Outcome o;
  struct Case {
    double mu;
    int range;
    double expected;
    double tol;
  };
  std::string summary;
  for (const Case& c : {Case{0.524, 6, 0.96, 0.02}, Case{0.815, 5, 0.99, 0.01}}) {
    const NetworkSpec spec(12, evanescent_profile(c.mu, c.range));
    const auto scan = transfer_scan(spec, 0, 6, 5000.0, default_scan_step(spec));
    o.require(std::abs(scan.max_value - c.expected) <= c.tol, "mu=" + num(c.mu) + " max " + num(scan.max_value));
    o.require(scan.z_at_max > 10 * pst_distance(1.0), "mu=" + num(c.mu) + " z_at_max " + num(scan.z_at_max));
    if (!summary.empty()) summary += "; ";
    summary += "mu=" + num(c.mu) + ": " + num(scan.max_value) + " at z=" + num(scan.z_at_max);
  }
  if (o.ok) o.detail = summary;
  return o;
}

Outcome synthesis() {
  Outcome o;
  for (auto [n, m] : {std::pair{8, 4}, std::pair{12, 6}}) {
    const auto s = solve_weights({n, m, 1.0, 1e-9});
    const auto j = effective_couplings(s.weights, n);
    double dev = 0.0;
    for (int r = 1; r < n / 2; ++r) dev = std::max(dev, std::abs(j[static_cast<std::size_t>(r - 1)] - 1.0));
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    o.require(dev < 1e-10, tag + " J deviation " + num(dev));
    o.require(std::abs(j.back()) < 1e-10, tag + " J_N/2 " + num(j.back()));
    o.require(verify_synthesis(s).is_pst, tag + " not PST");
  }
  return o;
}

std::size_t hash_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return std::hash<std::string>{}(s.str());
}

Outcome determinism() {
  Outcome o;
  const auto root = fs::temp_directory_path() / "pstnet_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto cfg = root / "run.cfg";
  std::ofstream(cfg) << "n = 12\nprofile = evanescent:mu=0.524,R=6\nalpha = 0.7071067811865476\nphi = pi/2\n"
                        "z-max = 20\n";
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    const int code = cli::run({"--config", cfg.string(), "--output-dir", (root / run).string(), "cat"}, sink, sink);
    o.require(code == cli::kExitOk, "cli exit code " + std::to_string(code));
  }
  for (const char* file : {"cat.csv", "cat.json"}) {
    o.require(fs::exists(root / "a" / file), std::string(file) + " missing");
    o.require(hash_file(root / "a" / file) == hash_file(root / "b" / file), std::string(file) + " differs");
  }
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"spectral collapse", spectral_collapse},
      {"opposite-site spectrum", opposite_site},
      {"single-photon PST", single_photon_pst},
      {"N=4n necessity", ring_size_necessity},
      {"oracle equivalence", oracle_equivalence},
      {"cat states", cat_states},
      {"TMSV transfer", tmsv_transfer},
      {"evanescent degradation", evanescent},
      {"synthesis", synthesis},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.ok;
    std::printf("[%s] %2zu %s%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
