#include <doctest.h>

#include "chainkit/params.hpp"
#include "helpers.hpp"

using namespace chainkit;

TEST_CASE("default reward schedule point checks")
{
    RewardSchedule schedule;
    CHECK(block_reward(schedule, 0) == Amount{50 * kCoin});
    CHECK(block_reward(schedule, 52'499) == Amount{50 * kCoin});
    CHECK(block_reward(schedule, 52'500) == Amount{25 * kCoin});
    CHECK(block_reward(schedule, 105'000) == Amount{12 * kCoin + 50'000'000});
    CHECK(block_reward(schedule, 6'929'999) == Amount{0}); // shifted away long before
    CHECK(block_reward(schedule, 6'930'000) == Amount{0});
    CHECK(block_reward(schedule, 100'000'000) == Amount{0});
}

TEST_CASE("reward is non-increasing and zero past the cutoff")
{
    RewardSchedule schedule;
    schedule.initial_reward = Amount{1'000'000};
    schedule.halving_interval = 10;
    schedule.cutoff_height = 95;
    testkit::Rng rng(3);
    for (int i = 0; i < 2'000; ++i) {
        Time a = rng.below(200);
        Time b = rng.below(200);
        if (a > b)
            std::swap(a, b);
        CHECK(block_reward(schedule, a) >= block_reward(schedule, b));
    }
    CHECK(block_reward(schedule, 94) > Amount{0});
    CHECK(block_reward(schedule, 95) == Amount{0});
}

TEST_CASE("maturation window is configurable with default 100")
{
    ChainParams defaults;
    CHECK(defaults.maturation_window == 100);

    ChainParams off{RewardSchedule{}, 0};
    CHECK(off.maturation_window == 0);
    ChainParams five{RewardSchedule{}, 5};
    CHECK(five.maturation_window == 5);
}

TEST_CASE("checked amount arithmetic rejects wraparound")
{
    Amount big{~std::uint64_t{0}};
    CHECK_FALSE(checked_add(big, Amount{1}));
    CHECK(checked_add(big, Amount{0}) == big);
    CHECK_FALSE(checked_sub(Amount{3}, Amount{4}));
    CHECK(checked_sub(Amount{4}, Amount{3}) == Amount{1});
}
