#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace aapam {

// FNV-1a, 64-bit. Stable across platforms, which keeps profile provenance
// reproducible between runs and machines.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (char c : text) {
    hash ^= static_cast<std::uint8_t>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value);

}  // namespace aapam
