#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "derham/system.hpp"

namespace derham::cli {

/// Malformed configuration, preset or flag value (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// A matrix pair as read from a config file or built from a preset.
/// Exactly one of the two sources is used.
struct SystemConfig {
  MoebiusMatrix a0;
  MoebiusMatrix a1;
  std::optional<std::string> preset;  // "lebesgue:1/3", "walk:1", ...
  std::optional<std::string> label;
};

/// JSON config:
///   {"schema": 1, "A0": ["a","b","c","d"], "A1": [...], "label": "..."}
/// or
///   {"schema": 1, "preset": {"lebesgue": "1/3"}}
/// Entries are strings ("n", "n/d" or decimals) or JSON numbers. Integer and
/// fraction strings are exact; decimals are approximate unless
/// `decimal_exact`. Throws ParseError with the byte offset for bad JSON.
SystemConfig parse_config(std::string_view text, bool decimal_exact);

/// Throws IoError if the file cannot be read.
SystemConfig read_config_file(const std::string& path, bool decimal_exact);

/// "lebesgue:P" or "walk:U".
SystemConfig preset_config(std::string_view text, bool decimal_exact);

/// Validates the pair (ValidationError propagates). With a requested mode
/// the system is converted; asking for exact mode on a system whose entries
/// are not rational throws PreconditionError.
DeRhamSystem build_system(const SystemConfig& config, std::optional<Mode> mode);

}  // namespace derham::cli
