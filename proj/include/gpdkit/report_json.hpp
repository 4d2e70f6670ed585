#pragma once

#include <json.hpp>

#include "gpdkit/validation.hpp"

namespace gpdkit {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest of the input text, as fixed-width hex.
std::string input_digest(const std::string& text);

ordered_json check_to_json(const CheckResult& c);

/// {"check": ..., "status": ..., "witness": [...], ...} per entry.
ordered_json report_to_json(const ValidationReport& rep);

/// Standard envelope: tool, version, input digest, empty checks array.
ordered_json make_envelope(const std::string& digest);

/// Floating values rendered with 12 significant digits.
std::string format_double(double v);

}  // namespace gpdkit
