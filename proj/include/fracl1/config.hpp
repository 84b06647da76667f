#pragma once

#include <string>
#include <string_view>

#include "fracl1/harness.hpp"

namespace fracl1 {

enum class ConfigFormat { Toml, Json };

/**
 * Reads a study config. TOML is the primary format (flat keys, optionally under
 * a [study] table); JSON is accepted as a fallback. Recognised keys: problem,
 * scheme, alpha, sigma, r, M, levels, N, seed. Unknown keys are rejected.
 * Throws std::invalid_argument on syntax or validation errors.
 */
StudyConfig parse_study_config(std::string_view text, ConfigFormat format);

/// Format chosen by extension (.json -> JSON, otherwise TOML); a TOML parse
/// failure on text starting with '{' falls back to JSON.
StudyConfig load_study_config(const std::string& path);

}  // namespace fracl1
