#pragma once

#include <cstdint>
#include <span>

#include "chainkit/bytes.hpp"

namespace chainkit {

// FIPS 180-4 SHA-256.
Digest sha256(std::span<const std::uint8_t> data);

// SHA-256 applied twice, the usual Bitcoin construction.
Digest sha256d(std::span<const std::uint8_t> data);

} // namespace chainkit
