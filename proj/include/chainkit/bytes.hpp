#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chainkit {

// 32-byte hash value.
struct Digest {
    std::array<std::uint8_t, 32> bytes{};

    friend bool operator==(const Digest&, const Digest&) = default;
    friend auto operator<=>(const Digest&, const Digest&) = default;
};

// 20-byte address, the (truncated) hash of a public key.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    friend bool operator==(const Address&, const Address&) = default;
    friend auto operator<=>(const Address&, const Address&) = default;
};

// Key and signature lengths are fixed by the active crypto scheme, not here.
using PublicKey = std::vector<std::uint8_t>;
using Signature = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> bytes);
std::optional<std::vector<std::uint8_t>> from_hex(const std::string& hex);

inline std::string to_hex(const Digest& d) { return to_hex(std::span(d.bytes)); }
inline std::string to_hex(const Address& a) { return to_hex(std::span(a.bytes)); }

std::optional<Digest> digest_from_hex(const std::string& hex);
std::optional<Address> address_from_hex(const std::string& hex);

} // namespace chainkit
