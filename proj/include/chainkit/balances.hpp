#pragma once

#include <map>
#include <optional>

#include "chainkit/amount.hpp"
#include "chainkit/bytes.hpp"

namespace chainkit {

// Address -> amount map. Absent means zero; zero entries are never stored,
// so equality is structural.
class Balances {
public:
    Balances() = default;

    Amount balance_of(const Address& addr) const
    {
        auto it = map_.find(addr);
        return it == map_.end() ? Amount{0} : it->second;
    }

    // nullopt on 64-bit overflow.
    std::optional<Balances> credited(const Address& addr, Amount amount) const;

    // nullopt when the address holds less than amount.
    std::optional<Balances> debited(const Address& addr, Amount amount) const;

    // nullopt on overflow of the grand total.
    std::optional<Amount> total() const;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<Address, Amount>& entries() const { return map_; }

    friend bool operator==(const Balances&, const Balances&) = default;

private:
    std::map<Address, Amount> map_;
};

} // namespace chainkit
