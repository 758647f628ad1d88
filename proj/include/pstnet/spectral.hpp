#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pstnet/lattice.hpp"

namespace pstnet {

/// Fourier-mode eigenvalues lambda_p of a circulant coupling matrix, indexed
/// by Fourier index p = 0..N-1 (not sorted).
struct Spectrum {
  std::vector<double> eigenvalues;

  int n_modes() const { return static_cast<int>(eigenvalues.size()); }
  double max_abs() const;
  /// Ascending copy, for histogramming and comparison with dense solvers.
  std::vector<double> sorted() const;
};

struct HistogramBin {
  double value = 0.0;  ///< mean of the merged eigenvalues
  int multiplicity = 0;

  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct DegeneracyHistogram {
  std::vector<HistogramBin> bins;  ///< ascending by value
  double tolerance = 0.0;

  int total() const;
};

/// lambda_p = sum_r w_r C_r cos(2 pi p r / N), with w_r = 2 except w_{N/2} = 1
/// (the antipodal bond appears once per site).
Spectrum dispersion(const NetworkSpec& spec);

/// Three-block spectrum of the uniform range-(N/2 - 1) ring:
/// lambda_0 = C(N-2), 0 for odd p, -2C for even p != 0. Requires even N >= 4.
Spectrum collapsed_spectrum(int n_modes, double coupling);

/// All-to-all uniform ring: lambda_0 = C(N-1), lambda_p = -C otherwise.
Spectrum opposite_site_spectrum(int n_modes, double coupling);

/// Default merge tolerance, 1e-9 * max(1, max |lambda|).
double default_degeneracy_tolerance(const Spectrum& spectrum);

/// Single-linkage clustering of the sorted eigenvalues: neighbours closer
/// than `tolerance` share a bin.
DegeneracyHistogram degeneracy_histogram(const Spectrum& spectrum, double tolerance);

/// Unitary symmetric DFT matrix S_{jp} = exp(2 pi i j p / N) / sqrt(N).
Eigen::MatrixXcd fourier_matrix(int n_modes);

/// Eigenvalues of coupling_matrix(spec) from a dense symmetric eigensolver,
/// ascending. Independent of the cosine sum used by dispersion().
std::vector<double> dense_eigenvalues(const NetworkSpec& spec);

}  // namespace pstnet
