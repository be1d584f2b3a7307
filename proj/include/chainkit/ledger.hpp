#pragma once

#include <span>
#include <vector>

#include "chainkit/balances.hpp"
#include "chainkit/msg.hpp"
#include "chainkit/output.hpp"
#include "chainkit/params.hpp"
#include "chainkit/violation.hpp"

// Account-balance model: a balance map driven by multi-input/multi-output
// signed transactions, grouped into blocks whose miner outputs must equal
// block reward plus collected fees. Inputs name an address and an amount
// directly; nothing ties a spend to a particular previous output, which is
// exactly why a verbatim transaction replays successfully in this model.
namespace chainkit::ledger {

// In this model the same (amount, address) record serves as both input
// and output.
using TxField = OutputField;

struct UnsignedTx {
    std::vector<TxField> inputs;
    std::vector<TxField> outputs;

    friend bool operator==(const UnsignedTx&, const UnsignedTx&) = default;
};

struct SignatureBundle {
    PublicKey pubkey;
    Signature signature;

    friend bool operator==(const SignatureBundle&, const SignatureBundle&) = default;
};

// One signature bundle per input, each covering that input and all outputs.
struct LedgerTx {
    UnsignedTx tx;
    std::vector<SignatureBundle> sigs;

    friend bool operator==(const LedgerTx&, const LedgerTx&) = default;
};

struct Block {
    std::vector<TxField> miner_outputs;
    std::vector<LedgerTx> txs;
};

struct Chain {
    std::vector<Block> blocks;
    RewardSchedule schedule;
    Time start_time = 0;
};

// List of (amount, address) pairs as a message.
Msg field_msg(const TxField& field);
Msg fields_msg(std::span<const TxField> fields);

// What the owner of one input signs: their own input and every output.
// Other inputs are absent, mirroring how Bitcoin signs.
Msg input_signing_msg(const TxField& input, std::span<const TxField> outputs);

// nullopt on overflow.
std::optional<Amount> total_amount(std::span<const TxField> fields);

CheckResult check_tx(const CryptoScheme& scheme, const Balances& balances, const LedgerTx& tx);

// Subtract every input, then add every output. Caller must have run
// check_tx; unchecked misuse surfaces as BalanceUnderflow / AmountOverflow.
CheckResult apply_tx(Balances& balances, const LedgerTx& tx);

// Input surplus. Errors with OutputsExceedInputs when outputs exceed inputs.
std::optional<Amount> tx_fee(const LedgerTx& tx);
std::optional<Amount> block_fee(const Block& block);

struct BlockViolation {
    std::optional<std::size_t> tx_index; // nullopt: the miner-output check
    Violation violation;

    friend bool operator==(const BlockViolation&, const BlockViolation&) = default;
};

std::optional<BlockViolation> check_block(const CryptoScheme& scheme, const Balances& balances,
                                          const Block& block, Time t, const RewardSchedule& schedule);

CheckResult apply_block(Balances& balances, const Block& block);

struct ChainViolation {
    std::size_t block_index;
    BlockViolation detail;
};

// Replays every block from the all-zero ledger at heights start_time,
// start_time + 1, ...
std::optional<ChainViolation> check_chain(const CryptoScheme& scheme, const Chain& chain);

// Fold of apply_block from the zero ledger; defined on unchecked chains.
// Throws IndexOutOfBounds never; arithmetic misuse reports via CheckResult.
struct FinalLedgerResult {
    Balances balances;
    CheckResult error; // set if an apply step failed
};
FinalLedgerResult final_ledger(const Chain& chain);

} // namespace chainkit::ledger
