#pragma once

// JSON form of a field: an array of [k, re, im] triples in ascending k.

#include "json.hpp"

#include "nls/spectral_field.hpp"

namespace nls {

nlohmann::json field_to_json(const Field& field);

/// Inverse of field_to_json. Missing modes are zero; the cutoff is the
/// largest |k| present.
Field field_from_json(const nlohmann::json& triples);

}  // namespace nls
