#include "pstnet/coupling_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pstnet/error.hpp"

namespace pstnet {

namespace {

double synthesis_cosine(int k, int r, int n) {
  return std::cos(2.0 * std::numbers::pi * static_cast<double>((k * r) % n) / n);
}

}  // namespace

SynthesisSolution solve_weights(const SynthesisProblem& problem) {
  const int n = problem.n_modes;
  const int m = problem.aux_pairs;
  if (n < 4 || n % 2 != 0) throw InvalidParameter("synthesis needs even N >= 4");
  if (m < 1) throw InvalidParameter("synthesis needs at least one auxiliary pair");
  if (!std::isfinite(problem.coupling)) throw InvalidParameter("target coupling must be finite");
  if (!(problem.tolerance > 0.0)) throw InvalidParameter("constraint tolerance must be positive");

  const int rows = n / 2;
  Eigen::MatrixXd system(rows, m);
  Eigen::VectorXd rhs(rows);
  for (int r = 1; r < rows; ++r) {
    for (int k = 1; k <= m; ++k) system(r - 1, k - 1) = synthesis_cosine(k, r, n);
    rhs(r - 1) = problem.coupling;
  }
  // Antipodal row: cos(pi k) = (-1)^k.
  for (int k = 1; k <= m; ++k) system(rows - 1, k - 1) = (k % 2 == 0) ? 1.0 : -1.0;
  rhs(rows - 1) = 0.0;

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
  const Eigen::VectorXd a = cod.solve(rhs);

  SynthesisSolution s;
  s.n_modes = n;
  s.weights.assign(a.data(), a.data() + a.size());
  s.couplings = effective_couplings(s.weights, n);
  s.residual = (system * a - rhs).norm();
  s.tolerance = problem.tolerance;
  return s;
}

std::vector<double> effective_couplings(const std::vector<double>& weights, int n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0) throw InvalidParameter("effective couplings need even N");
  std::vector<double> j(static_cast<std::size_t>(n_modes / 2), 0.0);
  for (int r = 1; r <= n_modes / 2; ++r) {
    double sum = 0.0;
    for (std::size_t k = 1; k <= weights.size(); ++k) {
      sum += weights[k - 1] * synthesis_cosine(static_cast<int>(k), r, n_modes);
    }
    j[static_cast<std::size_t>(r - 1)] = sum;
  }
  return j;
}

SynthesisSolution physical_parameters(SynthesisSolution solution, double delta_scale, double dispersive_min) {
  if (!(delta_scale > 0.0)) throw InvalidParameter("delta scale must be positive");
  if (!(dispersive_min > 0.0)) throw InvalidParameter("dispersive minimum must be positive");
  PhysicalParameters p;
  p.delta_scale = delta_scale;
  p.dispersive_min = dispersive_min;
  p.min_dispersive_ratio = std::numeric_limits<double>::infinity();
  for (double a : solution.weights) {
    AuxiliaryMode mode;
    mode.g = std::sqrt(std::abs(a) * delta_scale / 2.0);
    mode.delta = a < 0.0 ? -delta_scale : delta_scale;
    if (mode.g > 0.0) p.min_dispersive_ratio = std::min(p.min_dispersive_ratio, std::abs(mode.delta) / mode.g);
    p.modes.push_back(mode);
  }
  p.dispersive_violation = p.min_dispersive_ratio < dispersive_min;
  solution.physical = std::move(p);
  return solution;
}

PstReport verify_synthesis(const SynthesisSolution& solution, int source) {
  if (!solution.feasible()) {
    throw InconsistentInput("synthesis residual " + std::to_string(solution.residual) + " exceeds tolerance " +
                            std::to_string(solution.tolerance) +
                            "; the PST profile is not reproduced (use at least N/2 auxiliary pairs)");
  }
  const NetworkSpec spec(solution.n_modes, custom_profile(solution.couplings));
  return check_pst(spec, source);
}

}  // namespace pstnet
