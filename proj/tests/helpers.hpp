#pragma once

#include <cstdint>
#include <vector>

#include "chainkit/msg.hpp"
#include "chainkit/scheme.hpp"
#include "chainkit/selection.hpp"

// Test-side utilities: a deterministic rng, random message trees, random
// selections, and the bookkeeping oracles the implementations are checked
// against. Nothing here reuses the implementation paths under test.
namespace testkit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

// Random message tree with bounded depth and fan-out.
inline chainkit::Msg random_msg(Rng& rng, int depth = 0)
{
    std::uint64_t pick = depth >= 4 ? 0 : rng.below(4);
    switch (pick) {
    case 1:
        return chainkit::Msg::pair(random_msg(rng, depth + 1), random_msg(rng, depth + 1));
    case 2: {
        std::vector<chainkit::Msg> items;
        std::uint64_t n = rng.below(4);
        for (std::uint64_t i = 0; i < n; ++i)
            items.push_back(random_msg(rng, depth + 1));
        return chainkit::Msg::list(std::move(items));
    }
    case 3: {
        // Wide natural, as produced by embedded digests and keys.
        std::vector<std::uint8_t> bytes(1 + rng.below(40));
        for (auto& b : bytes)
            b = static_cast<std::uint8_t>(rng.next());
        return chainkit::Msg::nat_of_bytes(bytes);
    }
    default:
        return chainkit::Msg::nat(rng.below(1'000'000));
    }
}

// Valid-by-construction random selection over a list of the given length.
template <typename A, typename MakeNote>
chainkit::TrackedSelection<A> random_selection(Rng& rng, std::size_t len, MakeNote&& make_note)
{
    chainkit::TrackedSelection<A> sel;
    std::size_t picks = rng.below(len + 1);
    for (std::size_t k = 0; k < picks; ++k) {
        std::size_t remaining = len - k;
        if (remaining == 0)
            break;
        sel.steps.push_back({static_cast<std::size_t>(rng.below(remaining)), make_note(k)});
    }
    return sel;
}

// Bookkeeping oracle: original indices of selected entries and of the
// remainder, tracked with an explicit position vector instead of the
// index-remapping recursions.
struct SelectionOracle {
    std::vector<std::size_t> selected_origs;  // in step order
    std::vector<std::size_t> remainder_origs; // in remainder order
};

template <typename A>
SelectionOracle selection_oracle(std::size_t len, const chainkit::TrackedSelection<A>& sel)
{
    SelectionOracle oracle;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < len; ++i)
        positions.push_back(i);
    for (const auto& step : sel.steps) {
        oracle.selected_origs.push_back(positions.at(step.index));
        positions.erase(positions.begin() + static_cast<std::ptrdiff_t>(step.index));
    }
    oracle.remainder_origs = positions;
    return oracle;
}

} // namespace testkit
