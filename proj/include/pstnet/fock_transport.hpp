#pragma once

#include <vector>

#include "pstnet/lattice.hpp"
#include "pstnet/propagation.hpp"

namespace pstnet {

/// Occupations N_j(z) = |U_{j,m}(z)|^2 for one photon launched into mode m.
std::vector<double> photon_numbers(const NetworkSpec& spec, int input_mode, double z);

/// Cat state N(|alpha> + e^{i phi} |-alpha>) with real alpha. The free
/// propagation constant is fixed to zero (global phase).
class CatState {
 public:
  /// Throws DegenerateState for the odd-cat alpha -> 0 limit.
  CatState(double alpha, double phi);

  double alpha() const { return alpha_; }
  double phi() const { return phi_; }
  double normalization() const { return normalization_; }

 private:
  double alpha_;
  double phi_;
  double normalization_;
};

/// (2 + 2 exp(-2 alpha^2) cos phi)^{-1/2}.
double cat_normalization(double alpha, double phi);

/// F = |2 N^2 e^{-alpha^2} [exp(U* alpha^2) + cos(phi) exp(-U* alpha^2)]|^2
/// with U = U_{target,source}(z).
double cat_fidelity(const NetworkSpec& spec, int source, int target, const CatState& cat, double z);

/// Same formula evaluated for a given amplitude U.
double cat_fidelity_from_amplitude(const CatState& cat, std::complex<double> amplitude);

/// Fidelity at Z_PST, where U = -1.
double pst_cat_fidelity(double alpha, double phi);

ScanResult cat_fidelity_scan(const NetworkSpec& spec, int source, int target, const CatState& cat, double z_max,
                             double dz, bool keep_trace = true);

}  // namespace pstnet
