#include "pstnet/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "pstnet/error.hpp"

namespace pstnet {

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidParameter("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidParameter("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kUniform:
      return "uniform";
    case ProfileKind::kEvanescent:
      return "evanescent";
    case ProfileKind::kCustom:
      return "custom";
  }
  return "custom";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "uniform") return ProfileKind::kUniform;
  if (name == "evanescent") return ProfileKind::kEvanescent;
  if (name == "custom") return ProfileKind::kCustom;
  throw InvalidParameter("unknown profile kind '" + std::string(name) + "'");
}

CouplingProfile::CouplingProfile(ProfileKind kind, std::vector<double> couplings, double parameter)
    : kind_(kind), couplings_(std::move(couplings)), parameter_(parameter) {}

double CouplingProfile::at(int r) const {
  if (r < 1 || r > range()) {
    throw InvalidParameter("separation " + std::to_string(r) + " outside profile range");
  }
  return couplings_[static_cast<std::size_t>(r - 1)];
}

double CouplingProfile::max_abs() const {
  double m = 0.0;
  for (double c : couplings_) m = std::max(m, std::abs(c));
  return m;
}

CouplingProfile uniform_profile(double coupling, int range) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw InvalidParameter("uniform coupling must be positive and finite");
  }
  if (range < 1) throw InvalidParameter("profile range must be at least 1");
  return CouplingProfile(ProfileKind::kUniform,
                         std::vector<double>(static_cast<std::size_t>(range), coupling), coupling);
}

CouplingProfile evanescent_profile(double mu, int range) {
  if (!(mu > 0.0 && mu < 1.0)) throw InvalidParameter("evanescent mu must lie in (0, 1)");
  if (range < 1) throw InvalidParameter("profile range must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(range));
  for (int r = 1; r <= range; ++r) c[static_cast<std::size_t>(r - 1)] = std::pow(mu, r);
  return CouplingProfile(ProfileKind::kEvanescent, std::move(c), mu);
}

CouplingProfile custom_profile(std::vector<double> couplings) {
  if (couplings.empty()) throw InvalidParameter("custom profile needs at least one coupling");
  for (double c : couplings) {
    if (!std::isfinite(c)) throw InvalidParameter("custom couplings must be finite");
  }
  return CouplingProfile(ProfileKind::kCustom, std::move(couplings), 0.0);
}

double mu_from_separation(double kappa, double separation) {
  if (!(kappa > 0.0) || !(separation > 0.0)) {
    throw InvalidParameter("kappa and separation must both be positive");
  }
  return std::exp(-kappa * separation);
}

CouplingProfile parse_profile(std::string_view text) {
  text = trim(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidParameter("profile must look like kind:args, got '" + std::string(text) + "'");
  }
  const ProfileKind kind = profile_kind_from_string(trim(text.substr(0, colon)));
  const auto args = split(text.substr(colon + 1), ',');

  if (kind == ProfileKind::kCustom) {
    std::vector<double> values;
    for (auto a : args) values.push_back(parse_double(trim(a), "custom coupling"));
    return custom_profile(std::move(values));
  }

  std::map<std::string, std::string, std::less<>> kv;
  for (auto a : args) {
    auto eq = a.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("expected key=value in profile, got '" + std::string(a) + "'");
    }
    auto key = std::string(trim(a.substr(0, eq)));
    if (!kv.emplace(key, std::string(trim(a.substr(eq + 1)))).second) {
      throw InvalidParameter("duplicate profile key '" + key + "'");
    }
  }
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidParameter(std::string("profile is missing key '") + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  CouplingProfile result = kind == ProfileKind::kUniform
                               ? uniform_profile(parse_double(take("C"), "C"), parse_int(take("R"), "R"))
                               : evanescent_profile(parse_double(take("mu"), "mu"), parse_int(take("R"), "R"));
  if (!kv.empty()) throw InvalidParameter("unknown profile key '" + kv.begin()->first + "'");
  return result;
}

std::string format_profile(const CouplingProfile& profile) {
  std::string out(to_string(profile.kind()));
  out += ':';
  switch (profile.kind()) {
    case ProfileKind::kUniform:
      out += "C=" + fmt17(profile.parameter()) + ",R=" + std::to_string(profile.range());
      break;
    case ProfileKind::kEvanescent:
      out += "mu=" + fmt17(profile.parameter()) + ",R=" + std::to_string(profile.range());
      break;
    case ProfileKind::kCustom:
      for (int r = 1; r <= profile.range(); ++r) {
        if (r > 1) out += ',';
        out += fmt17(profile.at(r));
      }
      break;
  }
  return out;
}

NetworkSpec::NetworkSpec(int n_modes, CouplingProfile profile)
    : n_modes_(n_modes), profile_(std::move(profile)) {
  if (n_modes_ < 2) throw InvalidParameter("a ring needs at least 2 modes");
  if (profile_.range() > n_modes_ / 2) {
    throw InvalidParameter("profile range " + std::to_string(profile_.range()) + " exceeds N/2 = " +
                           std::to_string(n_modes_ / 2));
  }
}

Eigen::MatrixXd coupling_matrix(const NetworkSpec& spec) {
  const int n = spec.n_modes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int r = 1; r <= spec.profile().range(); ++r) {
    const double c = spec.profile().at(r);
    for (int j = 0; j < n; ++j) {
      const int k = (j + r) % n;
      // Assignment rather than accumulation: for r = N/2 the pair (j, k) is
      // visited twice, once from each end.
      m(j, k) = c;
      m(k, j) = c;
    }
  }
  return m;
}

}  // namespace pstnet
