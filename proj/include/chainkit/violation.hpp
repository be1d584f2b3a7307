#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace chainkit {

// Every way a transaction, block or chain can be rejected, across both
// ledger models and the wire format. Checks report the first violation in
// a fixed field order so failure positions are deterministic.
enum class ViolationKind {
    // shared
    empty_inputs,
    empty_outputs,
    outputs_exceed_inputs,
    amount_overflow,
    // account ledger
    bad_address,
    bad_signature_ledger,
    insufficient_balance,
    wrong_miner_amount,
    balance_underflow,
    // transaction tree
    immature_input,
    address_mismatch,
    bad_signature,
    wrong_coinbase_amount,
    wrong_coinbase_time,
    // outpoint resolution
    unknown_outpoint,
    duplicate_outpoint,
    ambiguous_outpoint,
};

const char* violation_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::optional<std::size_t> input_index; // which input, where applicable
    std::optional<std::uint64_t> expected;
    std::optional<std::uint64_t> got;

    std::string describe() const;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline Violation violation(ViolationKind kind)
{
    return Violation{kind, std::nullopt, std::nullopt, std::nullopt};
}

inline Violation violation_at(ViolationKind kind, std::size_t input_index)
{
    return Violation{kind, input_index, std::nullopt, std::nullopt};
}

inline Violation violation_mismatch(ViolationKind kind, std::uint64_t expected, std::uint64_t got)
{
    return Violation{kind, std::nullopt, expected, got};
}

// nullopt means the check passed.
using CheckResult = std::optional<Violation>;

// Structural misuse (an index outside its sequence), as opposed to a
// validation failure. Well-formed callers never trigger this.
class IndexOutOfBounds : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace chainkit
