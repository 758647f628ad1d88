#include "pstnet/fock_transport.hpp"

#include <cmath>
#include <numbers>

#include "pstnet/error.hpp"

namespace pstnet {

std::vector<double> photon_numbers(const NetworkSpec& spec, int input_mode, double z) {
  const int n = spec.n_modes();
  if (input_mode < 0 || input_mode >= n) throw InvalidParameter("input mode out of range");
  const auto u = propagator(spec, z);
  std::vector<double> occupation(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) occupation[static_cast<std::size_t>(j)] = std::norm(u.matrix(j, input_mode));
  return occupation;
}

double cat_normalization(double alpha, double phi) {
  if (!std::isfinite(alpha) || !std::isfinite(phi)) throw InvalidParameter("cat parameters must be finite");
  // Odd-cat limit: the superposition vanishes as alpha -> 0.
  const double to_pi = std::remainder(phi - std::numbers::pi, 2.0 * std::numbers::pi);
  if (std::abs(alpha) < 1e-6 && std::abs(to_pi) < 1e-6) {
    throw DegenerateState("odd cat state is undefined for alpha -> 0");
  }
  const double squared_inverse = 2.0 + 2.0 * std::exp(-2.0 * alpha * alpha) * std::cos(phi);
  if (!(squared_inverse > 1e-12)) throw DegenerateState("cat normalization is degenerate");
  return 1.0 / std::sqrt(squared_inverse);
}

CatState::CatState(double alpha, double phi)
    : alpha_(alpha), phi_(phi), normalization_(cat_normalization(alpha, phi)) {}

double cat_fidelity_from_amplitude(const CatState& cat, std::complex<double> amplitude) {
  const double a2 = cat.alpha() * cat.alpha();
  const double n2 = cat.normalization() * cat.normalization();
  const std::complex<double> u_conj = std::conj(amplitude);
  const std::complex<double> bracket = std::exp(u_conj * a2) + std::cos(cat.phi()) * std::exp(-u_conj * a2);
  const double f = std::norm(2.0 * n2 * std::exp(-a2) * bracket);
  constexpr double kSlack = 1e-12;
  if (!(f >= -kSlack && f <= 1.0 + kSlack)) {
    throw InconsistentInput("cat fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  return std::min(f, 1.0);
}

double cat_fidelity(const NetworkSpec& spec, int source, int target, const CatState& cat, double z) {
  return cat_fidelity_from_amplitude(cat, TransitionAmplitude(spec, target, source)(z));
}

double pst_cat_fidelity(double alpha, double phi) {
  const double n = cat_normalization(alpha, phi);
  const double a2 = alpha * alpha;
  const double value = 2.0 * n * n * std::exp(-a2) * (std::exp(-a2) + std::cos(phi) * std::exp(a2));
  return value * value;
}

ScanResult cat_fidelity_scan(const NetworkSpec& spec, int source, int target, const CatState& cat, double z_max,
                             double dz, bool keep_trace) {
  const TransitionAmplitude amp(spec, target, source);
  return scan_maximum([&](double z) { return cat_fidelity_from_amplitude(cat, amp(z)); }, z_max, dz, keep_trace);
}

}  // namespace pstnet
