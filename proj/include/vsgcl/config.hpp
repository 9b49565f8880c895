// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsgcl/params.hpp"

namespace vsgcl {

// Fully resolved run configuration.  `canonical` is a normalized text dump of
// every effective numeric parameter, used for hashing into run metadata.
struct LoadedConfig {
  SystemParams system;
  FaultSpec fault;
  RunOptions run;
  std::string canonical;
};

// Load order: built-in defaults, then the optional INI-style file, then the
// `section.key=value` override strings (e.g. from repeated --set flags).
// Unknown sections/keys and non-numeric values raise ConfigError; the final
// parameter set is validated before returning.
LoadedConfig load_config(const std::optional<std::string>& path,
                         const std::vector<std::string>& overrides);

// 64-bit FNV-1a over a byte string; stable across platforms.
std::uint64_t fnv1a64(std::string_view bytes);

// 16-hex-digit digest identifying the effective parameters of a run.
std::string params_digest(const LoadedConfig& cfg, std::string_view strategy,
                          InertiaMode mode);

}  // namespace vsgcl
