// config_io.hpp - key/value configuration files
//
// Format: one `key = value` per line, `#` starts a comment. Recognised keys:
//   m omega lambda mu hbar temp.C temp.T init.delta init.r init.q0 init.p0 closed
// Values are decimal numbers (closed: 0 or 1). Unknown or repeated keys are errors.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "lindosc/model.hpp"

namespace lindosc {

using ConfigValues = std::map<std::string, double>;

struct RunConfig {
    OscillatorConfig osc;
    InitialStateSpec init;
};

bool is_known_config_key(std::string_view key);

/// Correctly rounded, locale-independent decimal parse; throws ValidationError.
double parse_decimal(std::string_view text);

ConfigValues parse_config_text(std::string_view text);
ConfigValues load_config_file(const std::filesystem::path& path);

/// Builds a run configuration; unspecified keys keep their defaults
/// (natural units, lambda=0.2, mu=0.1, C=3, delta=4, r=0, centroid at the origin).
RunConfig build_run_config(const ConfigValues& values);

} // namespace lindosc
