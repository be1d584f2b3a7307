#include "chainkit/violation.hpp"

namespace chainkit {

const char* violation_name(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::empty_inputs: return "EmptyInputs";
    case ViolationKind::empty_outputs: return "EmptyOutputs";
    case ViolationKind::outputs_exceed_inputs: return "OutputsExceedInputs";
    case ViolationKind::amount_overflow: return "AmountOverflow";
    case ViolationKind::bad_address: return "BadAddress";
    case ViolationKind::bad_signature_ledger: return "BadSignature";
    case ViolationKind::insufficient_balance: return "InsufficientBalance";
    case ViolationKind::wrong_miner_amount: return "WrongMinerAmount";
    case ViolationKind::balance_underflow: return "BalanceUnderflow";
    case ViolationKind::immature_input: return "ImmatureInput";
    case ViolationKind::address_mismatch: return "AddressMismatch";
    case ViolationKind::bad_signature: return "BadSignature";
    case ViolationKind::wrong_coinbase_amount: return "WrongCoinbaseAmount";
    case ViolationKind::wrong_coinbase_time: return "WrongCoinbaseTime";
    case ViolationKind::unknown_outpoint: return "UnknownOutpoint";
    case ViolationKind::duplicate_outpoint: return "DuplicateOutpoint";
    case ViolationKind::ambiguous_outpoint: return "AmbiguousOutpoint";
    }
    return "Unknown";
}

std::string Violation::describe() const
{
    std::string s = violation_name(kind);
    if (input_index)
        s += " at input " + std::to_string(*input_index);
    if (expected)
        s += " (expected " + std::to_string(*expected) + ", got " + std::to_string(got.value_or(0)) + ")";
    return s;
}

} // namespace chainkit
