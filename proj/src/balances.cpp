#include "chainkit/balances.hpp"

namespace chainkit {

std::optional<Balances> Balances::credited(const Address& addr, Amount amount) const
{
    auto sum = checked_add(balance_of(addr), amount);
    if (!sum)
        return std::nullopt;
    Balances next = *this;
    if (sum->value == 0)
        next.map_.erase(addr);
    else
        next.map_[addr] = *sum;
    return next;
}

std::optional<Balances> Balances::debited(const Address& addr, Amount amount) const
{
    auto rest = checked_sub(balance_of(addr), amount);
    if (!rest)
        return std::nullopt;
    Balances next = *this;
    if (rest->value == 0)
        next.map_.erase(addr);
    else
        next.map_[addr] = *rest;
    return next;
}

std::optional<Amount> Balances::total() const
{
    Amount sum{0};
    for (const auto& [addr, amount] : map_) {
        auto next = checked_add(sum, amount);
        if (!next)
            return std::nullopt;
        sum = *next;
    }
    return sum;
}

} // namespace chainkit
