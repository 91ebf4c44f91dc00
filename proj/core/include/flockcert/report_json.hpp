#pragma once

#include <string>

#include "flockcert/certificates.hpp"

namespace flockcert {

/// Render the report as a JSON document with fields `constants`, `checks`
/// (name, range, margin, slack, pass, vacuous) and `meta` (grids, tolerances,
/// scenario fingerprint). Vacuous margins serialize as null.
std::string render_report(const CertificateReport& report);

/// Parse a tolerance block (JSON object; unknown keys rejected).
ToleranceConfig parse_tolerances(const std::string& json_text);

}  // namespace flockcert
