#include "chainkit/bytes.hpp"

#include <algorithm>

namespace chainkit {

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.resize(bytes.size() * 2);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        s[2 * i] = digits[bytes[i] >> 4];
        s[2 * i + 1] = digits[bytes[i] & 0x0F];
    }
    return s;
}

static int hex_nibble(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::optional<std::vector<std::uint8_t>> from_hex(const std::string& hex)
{
    if (hex.size() % 2 != 0)
        return std::nullopt;
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::optional<Digest> digest_from_hex(const std::string& hex)
{
    auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != 32)
        return std::nullopt;
    Digest d;
    std::copy(bytes->begin(), bytes->end(), d.bytes.begin());
    return d;
}

std::optional<Address> address_from_hex(const std::string& hex)
{
    auto bytes = from_hex(hex);
    if (!bytes || bytes->size() != 20)
        return std::nullopt;
    Address a;
    std::copy(bytes->begin(), bytes->end(), a.bytes.begin());
    return a;
}

} // namespace chainkit
