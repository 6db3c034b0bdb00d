#pragma once

#include <string>

#include <json.hpp>

#include "knotcurv/bounds.hpp"
#include "knotcurv/curve.hpp"
#include "knotcurv/invariants.hpp"

namespace knotcurv {

/// Curve interchange format: {"closed": bool, "vertices": [[x,y,z], ...],
/// "meta": {...}}. Serialization is deterministic, so write/read/write
/// round-trips byte-identically.
nlohmann::json curve_to_json(const SampledCurve& curve);
SampledCurve curve_from_json(const nlohmann::json& j);

std::string curve_to_string(const SampledCurve& curve);
SampledCurve curve_from_string(const std::string& text);

SampledCurve load_curve(const std::string& path);
void save_curve(const SampledCurve& curve, const std::string& path);

nlohmann::json report_to_json(const InvariantReport& report);
nlohmann::json certificate_to_json(const BoundCertificate& cert);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace knotcurv
