#pragma once

#include "mixent/covering.hpp"
#include "mixent/designs.hpp"
#include "mixent/packing.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mixent {

using Json = nlohmann::ordered_json;

/// Finite exponents as numbers, ∞ as the string "inf"; parsing also accepts strings like "1/2".
Json exponent_to_json(Exponent e);
Exponent exponent_from_json(const Json& j);

Json to_json(const PackingCertificate& cert);
Json to_json(const CoveringCertificate& cert);
Json to_json(const GVCode& code);
Json to_json(const SubsetFamily& family);

/// Malformed documents raise PreconditionError.
PackingCertificate packing_from_json(const Json& j);
CoveringCertificate covering_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// %.12g, with "inf"/"nan" spelled out.
std::string format_number(double v);

/// Comma-joined fields with a trailing newline.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace mixent
