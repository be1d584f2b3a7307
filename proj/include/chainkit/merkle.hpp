#pragma once

#include <variant>
#include <vector>

#include "chainkit/tree.hpp"

// Wire form of transactions: standard inputs reference a prior output by
// (txid, output number) instead of by position in the UTXO list. Resolution
// against a validated tree recovers the positional form.
namespace chainkit::merkle {

struct MerkleInput {
    Digest txid;
    std::uint64_t output_nr = 0;
    PublicKey pubkey;
    Signature signature;

    friend bool operator==(const MerkleInput&, const MerkleInput&) = default;
};

struct MerkleCoinbase {
    Time time = 0;
    std::vector<OutputField> outputs;

    friend bool operator==(const MerkleCoinbase&, const MerkleCoinbase&) = default;
};

struct MerkleStandard {
    std::vector<MerkleInput> inputs;
    std::vector<OutputField> outputs;

    friend bool operator==(const MerkleStandard&, const MerkleStandard&) = default;
};

using MerkleTx = std::variant<MerkleCoinbase, MerkleStandard>;

// Positional -> wire: coinbases map structurally, normal inputs become
// (producing txid, output index, key, signature) in input order.
MerkleTx to_merkle(const tree::TxTree& tr, const tree::TreeTx& tx);

// True iff the wire and positional transactions are the same modulo the
// mapping above. Mixed variants never correspond.
bool corresponds(const MerkleTx& m, const tree::TxTree& tr, const tree::TreeTx& tx);

// Wire -> positional against the current UTXO set. Each input must name
// exactly one unspent entry; an already-spent outpoint is indistinguishable
// from one that never existed and reports UnknownOutpoint. More than one
// match can only happen under a txid hash collision and is surfaced rather
// than guessed at.
std::variant<tree::TreeTx, Violation> resolve(const tree::CorrectTree& ct, const MerkleTx& m);

// resolve, check, extend. On success the new tree's last transaction
// corresponds to m.
std::variant<tree::CorrectTree, Violation> apply_merkle(const tree::CorrectTree& ct,
                                                        const MerkleTx& m);

} // namespace chainkit::merkle
