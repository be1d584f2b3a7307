#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chainkit/violation.hpp"

namespace chainkit {

// An ordered selection of entries from a list. Each step names a position
// in the list AS IT STANDS after the previous steps' deletions, so a value
// occurring twice can be selected once per occurrence. The annotation
// carries per-pick payload (a key and signature, for transaction inputs).
template <typename A>
struct TrackedSelection {
    struct Step {
        std::size_t index; // into the then-current remainder
        A note;

        friend bool operator==(const Step&, const Step&) = default;
    };

    std::vector<Step> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }

    // Valid against a list of length len iff every step indexes within the
    // shrinking remainder.
    bool valid_for(std::size_t len) const
    {
        if (steps.size() > len)
            return false;
        for (std::size_t k = 0; k < steps.size(); ++k)
            if (steps[k].index >= len - k)
                return false;
        return true;
    }

    friend bool operator==(const TrackedSelection&, const TrackedSelection&) = default;
};

// Position in the original list of position j in the list with position
// deleted_index removed.
std::size_t orig_index_after_delete(std::size_t len, std::size_t deleted_index, std::size_t j);

// Ascending indices 0..n-1.
std::vector<std::size_t> enumerate(std::size_t n);

template <typename T>
std::vector<T> delete_at(std::vector<T> l, std::size_t i)
{
    if (i >= l.size())
        throw IndexOutOfBounds("delete_at: index " + std::to_string(i) + " >= length " +
                               std::to_string(l.size()));
    l.erase(l.begin() + static_cast<std::ptrdiff_t>(i));
    return l;
}

// The list after removing every selected entry, in step order.
template <typename T, typename A>
std::vector<T> remainder(std::vector<T> l, const TrackedSelection<A>& sel)
{
    for (const auto& step : sel.steps)
        l = delete_at(std::move(l), step.index);
    return l;
}

template <typename T, typename A>
struct SelectedEntry {
    std::size_t orig_index;
    T element;
    A note;

    friend bool operator==(const SelectedEntry&, const SelectedEntry&) = default;
};

namespace detail {

// Step indices mapped back to positions in the original list, one per step.
template <typename A>
std::vector<std::size_t> selection_orig_indices(std::size_t len,
                                                std::span<const typename TrackedSelection<A>::Step> steps)
{
    if (steps.empty())
        return {};
    std::size_t first = steps.front().index;
    if (first >= len)
        throw IndexOutOfBounds("selection: step index out of range");
    std::vector<std::size_t> rest =
        selection_orig_indices<A>(len - 1, steps.subspan(1));
    std::vector<std::size_t> out;
    out.reserve(steps.size());
    out.push_back(first);
    for (std::size_t j : rest)
        out.push_back(orig_index_after_delete(len, first, j));
    return out;
}

} // namespace detail

// Each selected entry with its position in the original list, in step order.
// The original indices are pairwise distinct.
template <typename T, typename A>
std::vector<SelectedEntry<T, A>> selected_with_orig_indices(const std::vector<T>& l,
                                                            const TrackedSelection<A>& sel)
{
    std::vector<std::size_t> origs =
        detail::selection_orig_indices<A>(l.size(), std::span(sel.steps));
    std::vector<SelectedEntry<T, A>> out;
    out.reserve(origs.size());
    for (std::size_t k = 0; k < origs.size(); ++k)
        out.push_back(SelectedEntry<T, A>{origs[k], l[origs[k]], sel.steps[k].note});
    return out;
}

// Position i of remainder(l, sel) mapped back to a position of l.
template <typename A>
std::size_t remainder_index_to_orig(std::size_t len, const TrackedSelection<A>& sel, std::size_t i)
{
    std::span<const typename TrackedSelection<A>::Step> steps(sel.steps);
    // Unwound form of: map through the innermost remainder, then back out
    // through each deletion in reverse step order.
    std::vector<std::size_t> deleted;
    deleted.reserve(steps.size());
    std::size_t cur_len = len;
    for (const auto& step : steps) {
        if (step.index >= cur_len)
            throw IndexOutOfBounds("selection: step index out of range");
        deleted.push_back(step.index);
        --cur_len;
    }
    if (i >= cur_len)
        throw IndexOutOfBounds("remainder_index_to_orig: index out of range");
    std::size_t idx = i;
    for (std::size_t k = deleted.size(); k-- > 0;) {
        ++cur_len;
        idx = orig_index_after_delete(cur_len, deleted[k], idx);
    }
    return idx;
}

// Index into the concatenation of two lists, dispatched to the per-list
// index functions.
template <typename Fa, typename Fb>
auto concat_index_map(std::size_t len_a, std::size_t len_b, Fa&& f_a, Fb&& f_b, std::size_t i)
{
    if (i >= len_a + len_b)
        throw IndexOutOfBounds("concat_index_map: index out of range");
    if (i < len_a)
        return f_a(i);
    return f_b(i - len_a);
}

} // namespace chainkit
