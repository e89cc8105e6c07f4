#pragma once

#include <filesystem>
#include <string>

#include "demforge/sim_config.hpp"

namespace demforge {

/// Parses the flat key = value configuration format (see README for the
/// key reference). Unknown keys, duplicate keys, malformed values, and
/// missing required keys raise ConfigError with the file line number or
/// the key name.
SimConfig parse_config(const std::filesystem::path& path);
SimConfig parse_config_text(const std::string& text, const std::string& origin = "config");

/// Canonical text form; parse(serialize(cfg)) reproduces cfg.
std::string serialize_config(const SimConfig& cfg);

}  // namespace demforge
