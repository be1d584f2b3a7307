#pragma once

#include "chainkit/amount.hpp"
#include "chainkit/scheme.hpp"

namespace chainkit {

// Block subsidy curve: halves every halving_interval blocks and is clamped
// to zero from cutoff_height on. halving_interval must be positive.
struct RewardSchedule {
    Amount initial_reward{50 * kCoin};
    Time halving_interval = 52'500;
    Time cutoff_height = 6'930'000;

    friend bool operator==(const RewardSchedule&, const RewardSchedule&) = default;
};

Amount block_reward(const RewardSchedule& schedule, Time t);

// Reward curve plus the coinbase maturation window (in blocks).
struct ChainParams {
    RewardSchedule schedule;
    Time maturation_window = 100;

    friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

// Everything validation needs besides the transactions themselves.
// The scheme is borrowed; callers keep it alive.
struct Context {
    const CryptoScheme* scheme = &ToyScheme::instance();
    ChainParams params;

    Amount reward_at(Time t) const { return block_reward(params.schedule, t); }
    Time maturation_window() const { return params.maturation_window; }
};

} // namespace chainkit
