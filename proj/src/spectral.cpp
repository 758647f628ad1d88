#include "pstnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pstnet/error.hpp"

namespace pstnet {

double Spectrum::max_abs() const {
  double m = 0.0;
  for (double v : eigenvalues) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> Spectrum::sorted() const {
  auto s = eigenvalues;
  std::sort(s.begin(), s.end());
  return s;
}

int DegeneracyHistogram::total() const {
  int t = 0;
  for (const auto& b : bins) t += b.multiplicity;
  return t;
}

Spectrum dispersion(const NetworkSpec& spec) {
  const int n = spec.n_modes();
  const auto& profile = spec.profile();
  Spectrum s;
  s.eigenvalues.assign(static_cast<std::size_t>(n), 0.0);
  for (int p = 0; p < n; ++p) {
    double sum = 0.0;
    for (int r = 1; r <= profile.range(); ++r) {
      const double weight = (2 * r == n) ? 1.0 : 2.0;
      // Reduce p*r mod N first so the cosine argument stays in [0, 2pi).
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((p * r) % n) / n;
      sum += weight * profile.at(r) * std::cos(angle);
    }
    s.eigenvalues[static_cast<std::size_t>(p)] = sum;
  }
  return s;
}

Spectrum collapsed_spectrum(int n_modes, double coupling) {
  if (n_modes < 4 || n_modes % 2 != 0) {
    throw InvalidParameter("collapsed spectrum needs even N >= 4");
  }
  if (!(coupling > 0.0)) throw InvalidParameter("coupling must be positive");
  Spectrum s;
  s.eigenvalues.resize(static_cast<std::size_t>(n_modes));
  s.eigenvalues[0] = coupling * (n_modes - 2);
  for (int p = 1; p < n_modes; ++p) {
    s.eigenvalues[static_cast<std::size_t>(p)] = (p % 2 == 1) ? 0.0 : -2.0 * coupling;
  }
  return s;
}

Spectrum opposite_site_spectrum(int n_modes, double coupling) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw InvalidParameter("opposite-site spectrum needs even N");
  }
  if (!(coupling > 0.0)) throw InvalidParameter("coupling must be positive");
  Spectrum s;
  s.eigenvalues.assign(static_cast<std::size_t>(n_modes), -coupling);
  s.eigenvalues[0] = coupling * (n_modes - 1);
  return s;
}

double default_degeneracy_tolerance(const Spectrum& spectrum) {
  return 1e-9 * std::max(1.0, spectrum.max_abs());
}

DegeneracyHistogram degeneracy_histogram(const Spectrum& spectrum, double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidParameter("histogram tolerance must be positive");
  DegeneracyHistogram h;
  h.tolerance = tolerance;
  const auto values = spectrum.sorted();
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() && values[j] - values[j - 1] <= tolerance) {
      sum += values[j];
      ++j;
    }
    const int count = static_cast<int>(j - i);
    h.bins.push_back({sum / count, count});
    i = j;
  }
  return h;
}

Eigen::MatrixXcd fourier_matrix(int n_modes) {
  if (n_modes < 1) throw InvalidParameter("Fourier matrix needs N >= 1");
  Eigen::MatrixXcd s(n_modes, n_modes);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_modes));
  for (int j = 0; j < n_modes; ++j) {
    for (int p = 0; p < n_modes; ++p) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * p) % n_modes) / n_modes;
      s(j, p) = std::polar(norm, angle);
    }
  }
  return s;
}

std::vector<double> dense_eigenvalues(const NetworkSpec& spec) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(coupling_matrix(spec), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace pstnet
