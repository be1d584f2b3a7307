#include "chainkit/output.hpp"

namespace chainkit {

Msg output_field_msg(const OutputField& field)
{
    return Msg::pair(Msg::nat(field.amount.value), Msg::nat_of_bytes(field.address.bytes));
}

Msg output_fields_msg(std::span<const OutputField> fields)
{
    std::vector<Msg> items;
    items.reserve(fields.size());
    for (const OutputField& f : fields)
        items.push_back(output_field_msg(f));
    return Msg::list(std::move(items));
}

std::optional<Amount> sum_amounts(std::span<const OutputField> fields)
{
    Amount sum{0};
    for (const OutputField& f : fields) {
        auto next = checked_add(sum, f.amount);
        if (!next)
            return std::nullopt;
        sum = *next;
    }
    return sum;
}

} // namespace chainkit
