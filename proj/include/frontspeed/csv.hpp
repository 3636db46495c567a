#ifndef FRONTSPEED_CSV_HPP
#define FRONTSPEED_CSV_HPP

#include <string>

namespace frontspeed {

inline constexpr const char* kVersion = "frontspeed 0.1.0";

/// Deterministic numeric formatting, >= 6 significant digits.
std::string fmt(double v);

/// Writes via a temp file in the same directory, then renames, so partial
/// sweep runs never leave truncated files behind.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// FNV-1a 64-bit hex digest, for cross-stamping reports with the CSVs they
/// were derived from.
std::string fnv1a_hex(const std::string& data);

}  // namespace frontspeed

#endif
