#include "chainkit/selection.hpp"

namespace chainkit {

std::size_t orig_index_after_delete(std::size_t len, std::size_t deleted_index, std::size_t j)
{
    if (deleted_index >= len)
        throw IndexOutOfBounds("orig_index_after_delete: deleted index out of range");
    if (len == 0 || j >= len - 1)
        throw IndexOutOfBounds("orig_index_after_delete: remainder index out of range");
    // Positions before the deletion keep their index; later ones shift by one.
    return j < deleted_index ? j : j + 1;
}

std::vector<std::size_t> enumerate(std::size_t n)
{
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = i;
    return out;
}

} // namespace chainkit
