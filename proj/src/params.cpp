#include "chainkit/params.hpp"

namespace chainkit {

Amount block_reward(const RewardSchedule& schedule, Time t)
{
    if (t >= schedule.cutoff_height)
        return Amount{0};
    Time halvings = t / schedule.halving_interval;
    if (halvings >= 64)
        return Amount{0};
    return Amount{schedule.initial_reward.value >> halvings};
}

} // namespace chainkit
