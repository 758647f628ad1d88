#include "pstnet/gaussian_transport.hpp"

#include <cmath>
#include <string>

#include "pstnet/error.hpp"

namespace pstnet {

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    omega(2 * j, 2 * j + 1) = 1.0;
    omega(2 * j + 1, 2 * j) = -1.0;
  }
  return omega;
}

double symplectic_defect(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd omega = symplectic_form(static_cast<int>(m.rows() / 2));
  return (m * omega * m.transpose() - omega).cwiseAbs().maxCoeff();
}

CovarianceState vacuum_state(int n_modes) {
  if (n_modes < 1) throw InvalidParameter("state needs at least one mode");
  return {0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes)};
}

CovarianceState tmsv_covariance(const TmsvParams& params, int n_modes) {
  const int m = params.mode_m;
  const int n = params.mode_n;
  if (m < 0 || n < 0 || m >= n_modes || n >= n_modes || m == n) {
    throw InvalidParameter("TMSV needs two distinct modes inside the network");
  }
  if (!(params.w >= 0.0) || !std::isfinite(params.w)) throw InvalidParameter("squeezing strength must be >= 0");

  // Heisenberg action of the two-mode squeezer:
  //   a_m -> cosh(w) a_m + e^{i theta} sinh(w) a_n^dag  (and m <-> n).
  // In quadratures the cross block is sinh(w) [[cos t, sin t], [sin t, -cos t]].
  const double ch = std::cosh(params.w);
  const double sh = std::sinh(params.w);
  Eigen::Matrix2d cross;
  cross << std::cos(params.theta), std::sin(params.theta), std::sin(params.theta), -std::cos(params.theta);

  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  s.block<2, 2>(2 * m, 2 * m) = ch * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * n, 2 * n) = ch * Eigen::Matrix2d::Identity();
  s.block<2, 2>(2 * m, 2 * n) = sh * cross;
  s.block<2, 2>(2 * n, 2 * m) = sh * cross;

  Eigen::MatrixXd v = 0.5 * s * s.transpose();
  return {0.5 * (v + v.transpose())};
}

SymplecticEvolution symplectic_from_propagator(const Propagator& u) {
  const auto n = u.matrix.rows();
  if (u.matrix.cols() != n) throw InconsistentInput("propagator must be square");
  const double unitarity =
      (u.matrix * u.matrix.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unitarity > 1e-8) {
    throw InconsistentInput("propagator is not unitary (defect " + std::to_string(unitarity) + ")");
  }
  SymplecticEvolution e;
  e.z = u.z;
  e.matrix.resize(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      const double re = u.matrix(j, l).real();
      const double im = u.matrix(j, l).imag();
      e.matrix(2 * j, 2 * l) = re;
      e.matrix(2 * j, 2 * l + 1) = -im;
      e.matrix(2 * j + 1, 2 * l) = im;
      e.matrix(2 * j + 1, 2 * l + 1) = re;
    }
  }
  return e;
}

CovarianceState evolve_covariance(const CovarianceState& state, const SymplecticEvolution& evolution) {
  const auto& m = evolution.matrix;
  const auto& v = state.covariance;
  if (m.rows() != m.cols() || m.cols() != v.rows() || v.rows() != v.cols()) {
    throw InconsistentInput("dimension mismatch between covariance and symplectic matrix");
  }
  Eigen::MatrixXd out = m * v * m.transpose();
  return {0.5 * (out + out.transpose())};
}

double squeezing_factor(const CovarianceState& state, int j, int k, Quadrature quadrature) {
  const int n = state.n_modes();
  if (j == k) throw InvalidParameter("squeezing factor needs two distinct modes");
  if (j < 0 || k < 0 || j >= n || k >= n) throw InvalidParameter("squeezing mode out of range");
  const auto& v = state.covariance;
  if (quadrature == Quadrature::kQ) {
    const int a = CovarianceState::q_index(j);
    const int b = CovarianceState::q_index(k);
    return 0.5 * (v(a, a) + v(b, b) - 2.0 * v(a, b)) - 0.5;
  }
  const int a = CovarianceState::p_index(j);
  const int b = CovarianceState::p_index(k);
  return 0.5 * (v(a, a) + v(b, b) + 2.0 * v(a, b)) - 0.5;
}

double min_symplectic_eigenvalue(const CovarianceState& state) {
  const auto& v = state.covariance;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> vs(v);
  if (vs.eigenvalues().minCoeff() <= 0.0) return 0.0;
  // K = V^{1/2} Omega V^{1/2} is antisymmetric with eigenvalues +-i nu_k,
  // so -K^2 is symmetric with eigenvalues nu_k^2.
  const Eigen::MatrixXd root = vs.operatorSqrt();
  const Eigen::MatrixXd k = root * symplectic_form(state.n_modes()) * root;
  const Eigen::MatrixXd sym = -k * k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ks(0.5 * (sym + sym.transpose()), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, ks.eigenvalues().minCoeff()));
}

bool is_physical(const CovarianceState& state, double slack) {
  const auto& v = state.covariance;
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  return min_symplectic_eigenvalue(state) >= 0.5 - slack;
}

}  // namespace pstnet
