#pragma once

#include <optional>
#include <vector>

#include "pstnet/propagation.hpp"

namespace pstnet {

/// Uniform-coupling target for a ring of N waveguides fed by M symmetric
/// pairs of far-detuned auxiliary modes.
struct SynthesisProblem {
  int n_modes = 8;
  int aux_pairs = 4;
  double coupling = 1.0;
  double tolerance = 1e-9;  ///< maximum accepted constraint residual
};

struct AuxiliaryMode {
  double g = 0.0;      ///< |g_k|
  double delta = 0.0;  ///< signed detuning Delta_k
};

struct PhysicalParameters {
  std::vector<AuxiliaryMode> modes;
  double delta_scale = 0.0;
  /// min_k |Delta_k| / g_k over modes with g_k > 0; infinite when all g_k = 0.
  double min_dispersive_ratio = 0.0;
  double dispersive_min = 0.0;
  bool dispersive_violation = false;
};

struct SynthesisSolution {
  int n_modes = 0;
  std::vector<double> weights;    ///< A_k = 2|g_k|^2 / Delta_k, k = 1..M
  std::vector<double> couplings;  ///< J_r, r = 1..N/2
  double residual = 0.0;          ///< Euclidean norm of the constraint residual
  double tolerance = 0.0;
  std::optional<PhysicalParameters> physical;

  bool feasible() const { return residual <= tolerance; }
};

/// Solves sum_k A_k cos(2 pi k r / N) = C for r < N/2 together with
/// sum_k A_k (-1)^k = 0, by complete orthogonal decomposition: exact for
/// M = N/2, minimum norm for M > N/2, least squares for M < N/2.
SynthesisSolution solve_weights(const SynthesisProblem& problem);

/// J_r = sum_k A_k cos(2 pi k r / N) for r = 1..N/2.
std::vector<double> effective_couplings(const std::vector<double>& weights, int n_modes);

/// Splits each A_k into a common detuning magnitude and a coupling:
/// Delta_k = sign(A_k) delta_scale, g_k = sqrt(|A_k| delta_scale / 2).
SynthesisSolution physical_parameters(SynthesisSolution solution, double delta_scale, double dispersive_min);

/// Runs the antipodal PST check on the ring with C_r = J_r. Throws
/// InconsistentInput when the residual exceeds the solution tolerance.
PstReport verify_synthesis(const SynthesisSolution& solution, int source = 0);

}  // namespace pstnet
