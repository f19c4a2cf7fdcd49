#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fracrobin {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text) noexcept;
std::string hex64(std::uint64_t v);

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_real(double v);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace fracrobin
