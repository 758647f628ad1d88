#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "pstnet/lattice.hpp"
#include "pstnet/spectral.hpp"

namespace pstnet {

/// Transition amplitudes U_{jl}(z) between waveguides, a_j(z) = sum_l U_{jl} a_l(0).
struct Propagator {
  Eigen::MatrixXcd matrix;
  double z = 0.0;
};

/// Exact propagator from the Fourier sum
///   U_{jl}(z) = (1/N) sum_p exp(-i lambda_p z) exp(2 pi i p (j - l) / N).
Propagator propagator(const NetworkSpec& spec, double z);

/// Single entry U_{target,source}(z) without materializing the matrix.
/// Precomputes the spectrum and Fourier phases once; each call is O(N).
class TransitionAmplitude {
 public:
  TransitionAmplitude(const NetworkSpec& spec, int target, int source);

  std::complex<double> operator()(double z) const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<std::complex<double>> phases_;
};

/// Closed-form amplitude of the uniform range-(N/2 - 1) ring at site offset d.
/// Requires even N; d is reduced mod N.
std::complex<double> closed_form_amplitude(int n_modes, double coupling, int offset, double z);

/// Z_PST = (2s + 1) pi / (2C).
double pst_distance(double coupling, int s = 0);

/// If the profile is uniform up to range N/2 - 1 with a vanishing antipodal
/// coupling (relative tolerance 1e-9), returns that common coupling.
std::optional<double> collapse_coupling(const NetworkSpec& spec);

struct ScanPoint {
  double z = 0.0;
  double value = 0.0;
};

struct ScanResult {
  double max_value = 0.0;
  double z_at_max = 0.0;
  std::vector<ScanPoint> trace;  ///< grid samples only, refinement excluded
};

/// Grid scan of f over z = 0, dz, 2dz, ... <= z_max followed by a 40-step
/// golden-section search on [z* - 2dz, z* + 2dz] around the best grid point.
/// Ties keep the earliest grid point.
ScanResult scan_maximum(const std::function<double(double)>& f, double z_max, double dz,
                        bool keep_trace = true);

/// 0.01 / max_r |C_r|.
double default_scan_step(const NetworkSpec& spec);

/// Scan of |U_{target,source}(z)|^2.
ScanResult transfer_scan(const NetworkSpec& spec, int source, int target, double z_max, double dz,
                         bool keep_trace = true);

struct PstReport {
  bool is_pst = false;
  /// Candidate distance pi/(2C); present whenever the profile has the
  /// collapse shape, whether or not transfer is perfect.
  std::optional<double> z_pst;
  int source = 0;
  int target = 0;
  /// U_{target,source} at z_pst, or at z_at_max when z_pst is absent.
  std::complex<double> amplitude_at_zpst;
  double max_transfer = 0.0;
  double z_at_max = 0.0;

  friend bool operator==(const PstReport&, const PstReport&) = default;
};

struct PstCheckOptions {
  double tolerance = 1e-9;
  /// Scan range for max_transfer; zero selects 2 pi / max |C_r|.
  double z_max = 0.0;
  /// Scan step; zero selects default_scan_step().
  double dz = 0.0;
};

/// Antipodal transfer check from `source` to (source + N/2) mod N.
/// Throws UnsupportedGeometry for odd N.
PstReport check_pst(const NetworkSpec& spec, int source, const PstCheckOptions& options = {});

/// Fewest RK4 steps accepted by ode_oracle for distance z.
int min_oracle_steps(const NetworkSpec& spec, double z);

/// Classic RK4 integration of da/dz = -i M a with M = coupling_matrix(spec).
/// Verification oracle only. Refuses step sizes with |h| * max|lambda| >= 0.1.
Eigen::VectorXcd ode_oracle(const NetworkSpec& spec, const Eigen::VectorXcd& initial, double z, int steps);

}  // namespace pstnet
