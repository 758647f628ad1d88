#include "pstnet/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pstnet/error.hpp"

namespace pstnet {

namespace {

using cd = std::complex<double>;

int wrap(int index, int n) { return ((index % n) + n) % n; }

void require_mode(int mode, int n, const char* what) {
  if (mode < 0 || mode >= n) {
    throw InvalidParameter(std::string(what) + " mode " + std::to_string(mode) + " outside 0.." +
                           std::to_string(n - 1));
  }
}

// exp(2 pi i p d / N) with p*d reduced mod N.
cd fourier_phase(int p, int d, int n) {
  const int k = wrap(p * d, n);
  return std::polar(1.0, 2.0 * std::numbers::pi * k / n);
}

}  // namespace

TransitionAmplitude::TransitionAmplitude(const NetworkSpec& spec, int target, int source) {
  const int n = spec.n_modes();
  require_mode(target, n, "target");
  require_mode(source, n, "source");
  eigenvalues_ = dispersion(spec).eigenvalues;
  phases_.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) phases_[static_cast<std::size_t>(p)] = fourier_phase(p, target - source, n) / double(n);
}

cd TransitionAmplitude::operator()(double z) const {
  cd sum = 0.0;
  for (std::size_t p = 0; p < eigenvalues_.size(); ++p) {
    sum += std::polar(1.0, -eigenvalues_[p] * z) * phases_[p];
  }
  return sum;
}

Propagator propagator(const NetworkSpec& spec, double z) {
  if (!std::isfinite(z)) throw InvalidParameter("propagation distance must be finite");
  const int n = spec.n_modes();
  const auto lambda = dispersion(spec).eigenvalues;
  std::vector<cd> evolution(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) evolution[static_cast<std::size_t>(p)] = std::polar(1.0, -lambda[static_cast<std::size_t>(p)] * z);

  // Circulant: U_{jl} depends only on d = (j - l) mod N.
  std::vector<cd> column(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    cd sum = 0.0;
    for (int p = 0; p < n; ++p) sum += evolution[static_cast<std::size_t>(p)] * fourier_phase(p, d, n);
    column[static_cast<std::size_t>(d)] = sum / double(n);
  }

  Propagator u;
  u.z = z;
  u.matrix.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) u.matrix(j, l) = column[static_cast<std::size_t>(wrap(j - l, n))];
  }
  return u;
}

cd closed_form_amplitude(int n_modes, double coupling, int offset, double z) {
  if (n_modes < 4 || n_modes % 2 != 0) throw InvalidParameter("closed form needs even N >= 4");
  const int d = wrap(offset, n_modes);
  const double half = n_modes / 2.0;
  const double on_site = d == 0 ? 1.0 : 0.0;
  const double antipodal = d == n_modes / 2 ? 1.0 : 0.0;
  const cd top = std::polar(1.0, -coupling * (n_modes - 2) * z);
  const cd lower = std::polar(1.0, 2.0 * coupling * z);
  return (top + half * (on_site - antipodal) + lower * (half * (on_site + antipodal) - 1.0)) / double(n_modes);
}

double pst_distance(double coupling, int s) {
  if (!(coupling > 0.0)) throw InvalidParameter("coupling must be positive");
  if (s < 0) throw InvalidParameter("PST order s must be non-negative");
  return (2 * s + 1) * std::numbers::pi / (2.0 * coupling);
}

std::optional<double> collapse_coupling(const NetworkSpec& spec) {
  const int n = spec.n_modes();
  const auto& profile = spec.profile();
  const int reach = n / 2 - 1;
  if (n < 4 || n % 2 != 0 || profile.range() < reach) return std::nullopt;
  const double c = profile.at(1);
  if (!(c > 0.0)) return std::nullopt;
  constexpr double kRel = 1e-9;
  for (int r = 2; r <= reach; ++r) {
    if (std::abs(profile.at(r) - c) > kRel * c) return std::nullopt;
  }
  for (int r = reach + 1; r <= profile.range(); ++r) {
    if (std::abs(profile.at(r)) > kRel * c) return std::nullopt;
  }
  return c;
}

ScanResult scan_maximum(const std::function<double(double)>& f, double z_max, double dz, bool keep_trace) {
  if (!(z_max > 0.0) || !(dz > 0.0)) throw InvalidParameter("scan needs z_max > 0 and dz > 0");
  const auto count = static_cast<long long>(std::floor(z_max / dz * (1.0 + 1e-12))) + 1;

  ScanResult result;
  if (keep_trace) result.trace.reserve(static_cast<std::size_t>(count));
  long long best = 0;
  double best_value = -1.0;
  for (long long i = 0; i < count; ++i) {
    const double z = static_cast<double>(i) * dz;
    const double v = f(z);
    if (keep_trace) result.trace.push_back({z, v});
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  result.max_value = best_value;
  result.z_at_max = static_cast<double>(best) * dz;

  double lo = std::max(0.0, result.z_at_max - 2.0 * dz);
  double hi = std::min(z_max, result.z_at_max + 2.0 * dz);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 40; ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double z_ref = f1 >= f2 ? x1 : x2;
  const double v_ref = std::max(f1, f2);
  if (v_ref > result.max_value) {
    result.max_value = v_ref;
    result.z_at_max = z_ref;
  }
  return result;
}

double default_scan_step(const NetworkSpec& spec) {
  const double c = spec.profile().max_abs();
  return 0.01 / (c > 0.0 ? c : 1.0);
}

ScanResult transfer_scan(const NetworkSpec& spec, int source, int target, double z_max, double dz,
                         bool keep_trace) {
  const TransitionAmplitude amp(spec, target, source);
  return scan_maximum([&](double z) { return std::norm(amp(z)); }, z_max, dz, keep_trace);
}

PstReport check_pst(const NetworkSpec& spec, int source, const PstCheckOptions& options) {
  const int n = spec.n_modes();
  if (n % 2 != 0) throw UnsupportedGeometry("antipodal transfer needs an even number of modes");
  require_mode(source, n, "source");
  if (!(options.tolerance > 0.0)) throw InvalidParameter("PST tolerance must be positive");

  PstReport report;
  report.source = source;
  report.target = (source + n / 2) % n;
  const TransitionAmplitude amp(spec, report.target, source);

  const double c_max = spec.profile().max_abs() > 0.0 ? spec.profile().max_abs() : 1.0;
  const double z_max = options.z_max > 0.0 ? options.z_max : 2.0 * std::numbers::pi / c_max;
  const double dz = options.dz > 0.0 ? options.dz : default_scan_step(spec);
  const auto scan = scan_maximum([&](double z) { return std::norm(amp(z)); }, z_max, dz, false);
  report.max_transfer = scan.max_value;
  report.z_at_max = scan.z_at_max;

  const auto c = collapse_coupling(spec);
  if (c) {
    report.z_pst = pst_distance(*c);
    report.amplitude_at_zpst = amp(*report.z_pst);
    report.is_pst = n % 4 == 0 && std::norm(report.amplitude_at_zpst) >= 1.0 - options.tolerance;
  } else {
    report.amplitude_at_zpst = amp(report.z_at_max);
  }
  return report;
}

int min_oracle_steps(const NetworkSpec& spec, double z) {
  const double rate = dispersion(spec).max_abs();
  // Strict inequality |h| * rate < 0.1.
  const auto steps = static_cast<long long>(std::floor(std::abs(z) * rate / 0.1)) + 1;
  return static_cast<int>(std::max<long long>(1, steps));
}

Eigen::VectorXcd ode_oracle(const NetworkSpec& spec, const Eigen::VectorXcd& initial, double z, int steps) {
  const int n = spec.n_modes();
  if (initial.size() != n) throw InconsistentInput("initial amplitude vector has wrong length");
  if (steps < 1) throw InvalidParameter("oracle needs at least one step");
  const double h = z / steps;
  const double rate = dispersion(spec).max_abs();
  if (std::abs(h) * rate >= 0.1) {
    throw InvalidParameter("RK4 step too coarse: |h|*max|lambda| = " + std::to_string(std::abs(h) * rate) +
                           "; use at least " + std::to_string(min_oracle_steps(spec, z)) + " steps");
  }
  if (z == 0.0) return initial;

  const Eigen::MatrixXcd generator = cd(0.0, -1.0) * coupling_matrix(spec).cast<cd>();
  Eigen::VectorXcd a = initial;
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = generator * a;
    const Eigen::VectorXcd k2 = generator * (a + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = generator * (a + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = generator * (a + h * k3);
    a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

}  // namespace pstnet
