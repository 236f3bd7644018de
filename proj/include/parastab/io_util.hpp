#pragma once

#include <cstdint>
#include <string>

namespace parastab {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double x);

/// RFC 4180 field quoting (quotes applied only when needed).
std::string csv_field(const std::string& s);

std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

/// Write via temp file + rename in the target directory.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

std::string iso8601_utc_now();

}  // namespace parastab
