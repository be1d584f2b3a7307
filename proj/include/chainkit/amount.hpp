#pragma once

#include <cstdint>
#include <optional>

namespace chainkit {

// Block height. Non-negative by construction.
using Time = std::uint64_t;

// Monetary value in atomic coin units. All arithmetic on amounts is
// checked: addition never wraps, subtraction requires minuend >= subtrahend.
struct Amount {
    std::uint64_t value = 0;

    constexpr Amount() = default;
    explicit constexpr Amount(std::uint64_t v) : value(v) {}

    friend constexpr bool operator==(Amount, Amount) = default;
    friend constexpr auto operator<=>(Amount a, Amount b) { return a.value <=> b.value; }
};

// One whole coin in atomic units.
inline constexpr std::uint64_t kCoin = 100'000'000;

constexpr std::optional<Amount> checked_add(Amount a, Amount b)
{
    std::uint64_t sum = a.value + b.value;
    if (sum < a.value)
        return std::nullopt;
    return Amount{sum};
}

constexpr std::optional<Amount> checked_sub(Amount a, Amount b)
{
    if (a.value < b.value)
        return std::nullopt;
    return Amount{a.value - b.value};
}

} // namespace chainkit
