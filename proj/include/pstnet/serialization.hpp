#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "pstnet/coupling_synthesis.hpp"
#include "pstnet/propagation.hpp"
#include "pstnet/spectral.hpp"

namespace pstnet {

using Json = nlohmann::json;

/// "%.17g"; non-finite values become "inf", "-inf" or "nan".
std::string format_number(double value);

/// Pretty-printed JSON whose floating-point numbers use format_number.
/// Non-finite numbers are written as null. Keys are sorted.
std::string dump_json(const Json& value);

/// Reads a real number, also accepting multiples of pi such as `pi/2`,
/// `3pi/2`, `-pi`, `0.5*pi` and plain fractions such as `1/4`.
/// Throws InvalidParameter on anything else.
double parse_real(std::string_view text);

// Mode indices are stored 1-based in JSON, matching CLI labels.
Json to_json(const PstReport& report);
PstReport pst_report_from_json(const Json& json);

Json to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const Json& json);

Json to_json(const DegeneracyHistogram& histogram);
DegeneracyHistogram histogram_from_json(const Json& json);

Json to_json(const SynthesisSolution& solution);
SynthesisSolution synthesis_solution_from_json(const Json& json);

}  // namespace pstnet
