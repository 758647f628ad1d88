#pragma once

#include <Eigen/Dense>

#include "pstnet/propagation.hpp"

namespace pstnet {

// Phase-space conventions used throughout this header:
//   ordering   xi = (Q_0, P_0, Q_1, P_1, ..., Q_{N-1}, P_{N-1})
//   quadrature Q = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2)
//   vacuum     V = I/2
//   form       Omega = diag([[0, 1], [-1, 0]], ...)

enum class Quadrature { kQ, kP };

/// Two-mode squeezing xi = w e^{i theta} applied to the vacuum of modes m, n.
struct TmsvParams {
  double w = 0.0;
  double theta = 0.0;
  int mode_m = 0;
  int mode_n = 1;
};

/// Covariance matrix of a zero-mean Gaussian state.
struct CovarianceState {
  Eigen::MatrixXd covariance;

  int n_modes() const { return static_cast<int>(covariance.rows() / 2); }
  /// Index of Q_j (P_j is one past it).
  static int q_index(int mode) { return 2 * mode; }
  static int p_index(int mode) { return 2 * mode + 1; }
};

struct SymplecticEvolution {
  Eigen::MatrixXd matrix;
  double z = 0.0;
};

Eigen::MatrixXd symplectic_form(int n_modes);

/// max |M Omega M^T - Omega|.
double symplectic_defect(const Eigen::MatrixXd& m);

CovarianceState vacuum_state(int n_modes);

/// TMSV on the selected pair, vacuum on every other mode. For theta = 0 the
/// pair has Var(Q) = Var(P) = cosh(2w)/2, <Q_m Q_n> = sinh(2w)/2 and
/// <P_m P_n> = -sinh(2w)/2.
CovarianceState tmsv_covariance(const TmsvParams& params, int n_modes);

/// Quadrature image of a passive linear-optical unitary:
///   Q' = Re(U) Q - Im(U) P,  P' = Im(U) Q + Re(U) P.
/// Throws InconsistentInput when U is not unitary to 1e-8.
SymplecticEvolution symplectic_from_propagator(const Propagator& u);

/// V_f = M V M^T.
CovarianceState evolve_covariance(const CovarianceState& state, const SymplecticEvolution& evolution);

/// Variance of (Q_j - Q_k)/sqrt2 or (P_j + P_k)/sqrt2 minus the vacuum
/// level 1/2. Negative means squeezed below vacuum.
double squeezing_factor(const CovarianceState& state, int j, int k, Quadrature quadrature);

/// Smallest symplectic eigenvalue; physical states have >= 1/2.
/// Returns 0 when V is not positive definite.
double min_symplectic_eigenvalue(const CovarianceState& state);

bool is_physical(const CovarianceState& state, double slack = 1e-9);

}  // namespace pstnet
