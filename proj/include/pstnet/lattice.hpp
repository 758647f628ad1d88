#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pstnet {

enum class ProfileKind { kUniform, kEvanescent, kCustom };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// Couplings C_r for neighbour separations r = 1..R along the ring.
///
/// Instances are built through the named constructors below, which enforce
/// the per-kind invariants (uniform: one positive value; evanescent: C_r = mu^r
/// with 0 < mu < 1; custom: any finite values).
class CouplingProfile {
 public:
  ProfileKind kind() const { return kind_; }
  std::span<const double> couplings() const { return couplings_; }
  int range() const { return static_cast<int>(couplings_.size()); }

  /// C_r for 1 <= r <= range().
  double at(int r) const;

  /// Largest |C_r|; zero for an all-zero custom profile.
  double max_abs() const;

  /// Parameter that generated the profile: C for uniform, mu for
  /// evanescent, 0 for custom.
  double parameter() const { return parameter_; }

  friend bool operator==(const CouplingProfile&, const CouplingProfile&) = default;

 private:
  CouplingProfile(ProfileKind kind, std::vector<double> couplings, double parameter);

  friend CouplingProfile uniform_profile(double, int);
  friend CouplingProfile evanescent_profile(double, int);
  friend CouplingProfile custom_profile(std::vector<double>);

  ProfileKind kind_;
  std::vector<double> couplings_;
  double parameter_;
};

CouplingProfile uniform_profile(double coupling, int range);
CouplingProfile evanescent_profile(double mu, int range);
CouplingProfile custom_profile(std::vector<double> couplings);

/// Evanescent decay factor mu = exp(-kappa * d) for waveguide spacing d.
double mu_from_separation(double kappa, double separation);

/// Parses `uniform:C=1,R=3`, `evanescent:mu=0.524,R=6` or
/// `custom:0.5,0.25,0.1`. Throws InvalidParameter on malformed text.
CouplingProfile parse_profile(std::string_view text);

/// Inverse of parse_profile, with 17 significant digits.
std::string format_profile(const CouplingProfile& profile);

/// A ring of N waveguides with a circulant coupling profile.
/// Requires N >= 2 and 1 <= R <= N/2.
class NetworkSpec {
 public:
  NetworkSpec(int n_modes, CouplingProfile profile);

  int n_modes() const { return n_modes_; }
  const CouplingProfile& profile() const { return profile_; }

 private:
  int n_modes_;
  CouplingProfile profile_;
};

/// Real symmetric circulant coupling matrix. Separation N/2 (even N) links
/// each antipodal pair exactly once.
Eigen::MatrixXd coupling_matrix(const NetworkSpec& spec);

}  // namespace pstnet
