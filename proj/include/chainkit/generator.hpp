#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainkit/chainfile.hpp"

// Deterministic test-chain generation. A seed fully determines the output
// bytes; without faults the file validates, with a fault it is rejected at
// the targeted line with the fault's violation.
namespace chainkit::gen {

enum class FaultKind {
    double_spend,
    bad_signature,
    premature_spend,
    wrong_coinbase_amount,
    wrong_coinbase_time,
    duplicate_coinbase_outputs,
};

const char* fault_name(FaultKind kind);
std::optional<FaultKind> fault_by_name(const std::string& name);

// The violation each fault is rejected with. A duplicated coinbase is a
// verbatim replay of the previous coinbase line; the time rule is what
// catches it, since the copied message claims an already-mined height.
ViolationKind expected_violation(FaultKind kind);

struct FaultSpec {
    FaultKind kind;
    std::size_t line; // file line of the faulty transaction (header is line 1)

    friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

// "BadSignature@5" -> {bad_signature, 5}
std::optional<FaultSpec> parse_fault(const std::string& text);

// Smallest file line at which a fault of this kind can be staged.
std::size_t min_fault_line(FaultKind kind);

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t n_txs = 20;
    std::vector<FaultSpec> faults;
    ChainParams params{RewardSchedule{}, 2}; // short maturation so spends happen
};

// Full file contents, header line included. Throws std::invalid_argument
// when a fault position is out of range or too early for its kind.
std::string generate_chain(const GenConfig& config);

} // namespace chainkit::gen
