#pragma once

#include <span>
#include <vector>

#include "chainkit/amount.hpp"
#include "chainkit/bytes.hpp"
#include "chainkit/msg.hpp"

namespace chainkit {

// An amount payable to an address. Used both for transaction outputs and,
// in the account model, for inputs.
struct OutputField {
    Amount amount;
    Address address;

    friend bool operator==(const OutputField&, const OutputField&) = default;
};

Msg output_field_msg(const OutputField& field);
Msg output_fields_msg(std::span<const OutputField> fields);

// nullopt on overflow.
std::optional<Amount> sum_amounts(std::span<const OutputField> fields);

} // namespace chainkit
