#pragma once

// Command dispatch shared by the CLI and the python bindings.

#include <string>

#include "skly/config.hpp"

namespace skly {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "skly.report.v1";

/// Run one command ("construct", "hilbert", "transform quadric-to-plane",
/// "transform cremona", "witness", "sweep") against a parsed config.
/// Throws ConfigError, GenericityError, TorsionSearchError or Error.
json run_command(const std::string& command, const json& config);

/// String-in / string-out convenience wrapper (used by the bindings).
std::string run_command_text(const std::string& command, const std::string& config_text);

}  // namespace skly
