#include "pstnet/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "pstnet/error.hpp"

namespace pstnet {

namespace {

void write_json(std::string& out, const Json& value, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (value.type()) {
    case Json::value_t::number_float: {
      const double x = value.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      break;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out += inner;
        write_json(out, value[i], depth + 1);
        out += i + 1 < value.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      break;
    }
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = value.begin(); it != value.end(); ++it, ++i) {
        out += inner + Json(it.key()).dump() + ": ";
        write_json(out, it.value(), depth + 1);
        out += i + 1 < value.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      break;
    }
    default:
      out += value.dump();
  }
}

double strict_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidParameter("not a number: '" + std::string(text) + "'");
  }
  return value;
}

double number_or_inf(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json complex_to_json(std::complex<double> c) { return {{"re", c.real()}, {"im", c.imag()}}; }

std::complex<double> complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const Json& value) {
  std::string out;
  write_json(out, value, 0);
  out += '\n';
  return out;
}

double parse_real(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c != ' ' && c != '\t') cleaned += c;
  }
  std::string_view s = cleaned;
  if (s.empty()) throw InvalidParameter("empty number");

  if (auto pi = s.find("pi"); pi != std::string_view::npos) {
    std::string_view coef = s.substr(0, pi);
    if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
    double factor = 1.0;
    if (coef == "-") {
      factor = -1.0;
    } else if (!coef.empty() && coef != "+") {
      factor = strict_double(coef);
    }
    std::string_view rest = s.substr(pi + 2);
    double denominator = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') throw InvalidParameter("cannot parse '" + std::string(text) + "'");
      denominator = strict_double(rest.substr(1));
    }
    if (denominator == 0.0) throw InvalidParameter("division by zero in '" + std::string(text) + "'");
    return factor * std::numbers::pi / denominator;
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const double den = strict_double(s.substr(slash + 1));
    if (den == 0.0) throw InvalidParameter("division by zero in '" + std::string(text) + "'");
    return strict_double(s.substr(0, slash)) / den;
  }
  return strict_double(s);
}

Json to_json(const PstReport& report) {
  Json j;
  j["is_pst"] = report.is_pst;
  j["z_pst"] = report.z_pst ? Json(*report.z_pst) : Json(nullptr);
  j["source"] = report.source + 1;
  j["target"] = report.target + 1;
  j["amplitude_at_zpst"] = complex_to_json(report.amplitude_at_zpst);
  j["transfer_at_zpst"] = std::norm(report.amplitude_at_zpst);
  j["max_transfer"] = report.max_transfer;
  j["z_at_max"] = report.z_at_max;
  return j;
}

PstReport pst_report_from_json(const Json& j) {
  PstReport r;
  r.is_pst = j.at("is_pst").get<bool>();
  if (!j.at("z_pst").is_null()) r.z_pst = j.at("z_pst").get<double>();
  r.source = j.at("source").get<int>() - 1;
  r.target = j.at("target").get<int>() - 1;
  r.amplitude_at_zpst = complex_from_json(j.at("amplitude_at_zpst"));
  r.max_transfer = j.at("max_transfer").get<double>();
  r.z_at_max = j.at("z_at_max").get<double>();
  return r;
}

Json to_json(const Spectrum& spectrum) {
  return {{"n_modes", spectrum.n_modes()}, {"eigenvalues", spectrum.eigenvalues}};
}

Spectrum spectrum_from_json(const Json& j) {
  Spectrum s;
  s.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  if (j.at("n_modes").get<int>() != s.n_modes()) throw InconsistentInput("spectrum length mismatch");
  return s;
}

Json to_json(const DegeneracyHistogram& histogram) {
  Json bins = Json::array();
  for (const auto& b : histogram.bins) bins.push_back({{"value", b.value}, {"multiplicity", b.multiplicity}});
  return {{"tolerance", histogram.tolerance},
          {"bins", bins},
          {"distinct", histogram.bins.size()},
          {"total", histogram.total()}};
}

DegeneracyHistogram histogram_from_json(const Json& j) {
  DegeneracyHistogram h;
  h.tolerance = j.at("tolerance").get<double>();
  for (const auto& b : j.at("bins")) h.bins.push_back({b.at("value").get<double>(), b.at("multiplicity").get<int>()});
  return h;
}

Json to_json(const SynthesisSolution& solution) {
  Json j;
  j["n_modes"] = solution.n_modes;
  j["aux_pairs"] = solution.weights.size();
  j["weights"] = solution.weights;
  j["couplings"] = solution.couplings;
  j["residual"] = solution.residual;
  j["tolerance"] = solution.tolerance;
  j["feasible"] = solution.feasible();
  if (solution.physical) {
    const auto& p = *solution.physical;
    Json modes = Json::array();
    for (const auto& m : p.modes) modes.push_back({{"g", m.g}, {"delta", m.delta}});
    j["physical"] = {{"modes", modes},
                     {"delta_scale", p.delta_scale},
                     {"min_dispersive_ratio", p.min_dispersive_ratio},
                     {"dispersive_min", p.dispersive_min},
                     {"dispersive_violation", p.dispersive_violation}};
  } else {
    j["physical"] = nullptr;
  }
  return j;
}

SynthesisSolution synthesis_solution_from_json(const Json& j) {
  SynthesisSolution s;
  s.n_modes = j.at("n_modes").get<int>();
  s.weights = j.at("weights").get<std::vector<double>>();
  s.couplings = j.at("couplings").get<std::vector<double>>();
  s.residual = j.at("residual").get<double>();
  s.tolerance = j.at("tolerance").get<double>();
  if (const auto& pj = j.at("physical"); !pj.is_null()) {
    PhysicalParameters p;
    for (const auto& m : pj.at("modes")) p.modes.push_back({m.at("g").get<double>(), m.at("delta").get<double>()});
    p.delta_scale = pj.at("delta_scale").get<double>();
    p.min_dispersive_ratio = number_or_inf(pj.at("min_dispersive_ratio"));
    p.dispersive_min = pj.at("dispersive_min").get<double>();
    p.dispersive_violation = pj.at("dispersive_violation").get<bool>();
    s.physical = std::move(p);
  }
  return s;
}

}  // namespace pstnet
