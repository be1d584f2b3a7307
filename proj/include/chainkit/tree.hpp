#pragma once

#include <span>
#include <variant>
#include <vector>

#include "chainkit/balances.hpp"
#include "chainkit/output.hpp"
#include "chainkit/params.hpp"
#include "chainkit/selection.hpp"
#include "chainkit/violation.hpp"

// Transaction-tree model: a linear chain of transactions whose normal
// inputs select entries of the previous unspent-output list, with coinbase
// transactions minting reward plus accumulated fees. The tree keeps the
// derived UTXO set, fee accumulator and next block time incrementally;
// every cached value equals recomputation from genesis, and tests hold it
// to that.
namespace chainkit::tree {

// Key and signature attached to one selected input.
struct InputSig {
    PublicKey pubkey;
    Signature signature;

    friend bool operator==(const InputSig&, const InputSig&) = default;
};

using InputSelection = TrackedSelection<InputSig>;

struct NormalTx {
    InputSelection inputs; // over the parent tree's UTXO list
    std::vector<OutputField> outputs;

    friend bool operator==(const NormalTx&, const NormalTx&) = default;
};

struct CoinbaseTx {
    Time time = 0;
    std::vector<OutputField> outputs;

    friend bool operator==(const CoinbaseTx&, const CoinbaseTx&) = default;
};

using TreeTx = std::variant<NormalTx, CoinbaseTx>;

inline bool is_coinbase(const TreeTx& tx) { return std::holds_alternative<CoinbaseTx>(tx); }
const std::vector<OutputField>& outputs_of(const TreeTx& tx);
std::size_t nr_outputs(const TreeTx& tx);

// A particular output of a particular transaction in the tree.
struct OutputRef {
    std::size_t tx_position;  // index into the tree's transaction sequence
    std::size_t output_index; // < nr_outputs of that transaction

    friend bool operator==(const OutputRef&, const OutputRef&) = default;
    friend auto operator<=>(const OutputRef&, const OutputRef&) = default;
};

struct UtxoEntry {
    OutputRef ref;
    OutputField field;
    Digest producing_txid;
    Time maturation; // 0 for normal outputs, time + window for coinbase ones
    Msg msg;         // pair (txid as natural, output index)

    friend bool operator==(const UtxoEntry&, const UtxoEntry&) = default;
};

struct ResolvedInput {
    std::size_t orig_index; // position in the parent UTXO list
    UtxoEntry entry;
    PublicKey pubkey;
    Signature signature;
};

// What an input's owner signs: the producing txid, output number and
// address of the entry being spent, plus every output of the spending
// transaction. Other inputs and the signature itself are absent.
Msg msg_to_sign(const UtxoEntry& entry, std::span<const OutputField> outputs);

class TxTree {
public:
    explicit TxTree(Context ctx) : ctx_(std::move(ctx)) {}

    const Context& ctx() const { return ctx_; }
    std::size_t size() const { return steps_.size(); }
    bool is_genesis() const { return steps_.empty(); }

    const std::vector<UtxoEntry>& utxo() const { return utxo_; }
    Amount pending_fees() const { return pending_fees_; }
    Time next_block_time() const { return next_time_; }

    const TreeTx& tx_at(std::size_t pos) const;
    const Digest& txid_at(std::size_t pos) const;
    const Msg& msg_at(std::size_t pos) const;

    // --- candidate transaction against the current state ---

    // Output refs the transaction would add, in output order.
    std::vector<OutputRef> tx_outputs(const TreeTx& tx) const;

    // UTXO entries surviving the transaction's spends (all of them for a
    // coinbase). Throws IndexOutOfBounds on an invalid selection.
    std::vector<UtxoEntry> utxo_minus_new_inputs(const TreeTx& tx) const;

    // Selected entries with their keys and signatures, in input order.
    std::vector<ResolvedInput> resolve_inputs(const InputSelection& inputs) const;

    std::optional<Amount> sum_inputs(const InputSelection& inputs) const;

    // Input sum of any transaction: resolved entries for a normal one,
    // pending fees plus the block reward for a coinbase.
    std::optional<Amount> tx_sum_inputs(const TreeTx& tx) const;

    Msg tx_msg(const TreeTx& tx) const;
    Digest tx_id(const TreeTx& tx) const;

    // Message of UTXO entry i by the structural recursion over the tree
    // spine. Equal to utxo()[i].msg; kept as the independent route.
    Msg utxo_msg(std::size_t i) const;

    CheckResult check_tx(const TreeTx& tx) const;

    // Structural append; performs no validity check beyond selection
    // bounds. Use CorrectTree to only ever build checked chains.
    TxTree extend(const TreeTx& tx) const;

    Balances balances_from_utxo() const;

    // UTXO length after the given number of transactions.
    std::size_t utxo_size_after(std::size_t n_txs) const;

private:
    struct Step {
        TreeTx tx;
        Digest txid;
        Msg msg;
        std::size_t utxo_len_after;
    };

    Time maturation_of(const TreeTx& tx, Time tx_time) const;
    Msg utxo_msg_at(std::size_t n_txs, std::size_t i) const;

    Context ctx_;
    std::vector<Step> steps_;
    std::vector<UtxoEntry> utxo_;
    Amount pending_fees_{0};
    Time next_time_ = 0;
};

// Maturation of one output: normal outputs spend immediately, coinbase
// outputs wait out the configured window from their block height.
Time maturation_time(const Context& ctx, const TreeTx& producing_tx);

struct TreeViolation {
    std::size_t position; // transaction index
    Violation violation;

    friend bool operator==(const TreeViolation&, const TreeViolation&) = default;
};

// Replays a transaction sequence from genesis, checking each step.
std::variant<TxTree, TreeViolation> check_tree(const Context& ctx, std::span<const TreeTx> txs);

// A tree that passed check_tx at every extension. There is no way to hold
// one wrapping an unchecked tree.
class CorrectTree {
public:
    static CorrectTree genesis(Context ctx) { return CorrectTree(TxTree(std::move(ctx))); }

    const TxTree& tree() const { return tree_; }

    // The checked transaction with its validated extension.
    std::variant<CorrectTree, Violation> extend(const TreeTx& tx) const;

private:
    explicit CorrectTree(TxTree tree) : tree_(std::move(tree)) {}

    TxTree tree_;
};

} // namespace chainkit::tree
