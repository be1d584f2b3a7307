#pragma once

#include <doctest.h>

#include <map>

#include "chainkit/tree.hpp"
#include "helpers.hpp"

// Builders for valid transaction trees, plus a from-scratch recomputation
// oracle that never touches TxTree: it folds the fee/time/UTXO equations
// itself and derives every message from tracked provenance.
namespace testkit {

using namespace chainkit;
using tree::CoinbaseTx;
using tree::InputSig;
using tree::NormalTx;
using tree::TreeTx;

class TreeBuilder {
public:
    explicit TreeBuilder(Context ctx, std::uint64_t seed) : rng_(seed), tree_(ctx) {}

    const tree::TxTree& tree() const { return tree_; }
    const std::vector<TreeTx>& txs() const { return txs_; }

    Address fresh_address()
    {
        PublicKey pk = ToyScheme::instance().keygen(rng_.next());
        Address addr = ToyScheme::instance().pubkey_to_address(pk);
        keys_[addr] = pk;
        return addr;
    }

    const PublicKey& key_for(const Address& addr) const { return keys_.at(addr); }

    CoinbaseTx next_coinbase(std::size_t n_outputs = 1)
    {
        Time t = tree_.next_block_time();
        Amount claim = checked_add(tree_.pending_fees(), tree_.ctx().reward_at(t)).value();
        CoinbaseTx cb{t, {}};
        for (std::size_t i = 0; i + 1 < n_outputs; ++i) {
            Amount part{claim.value / n_outputs};
            cb.outputs.push_back(OutputField{part, fresh_address()});
            claim.value -= part.value;
        }
        cb.outputs.push_back(OutputField{claim, fresh_address()});
        return cb;
    }

    // Spend the given absolute UTXO positions with valid signatures.
    NormalTx spend(std::vector<std::size_t> positions, Amount fee, std::size_t n_outputs = 1)
    {
        const auto& utxo = tree_.utxo();
        Amount in_sum{0};
        for (std::size_t p : positions)
            in_sum = checked_add(in_sum, utxo[p].field.amount).value();
        if (fee > in_sum)
            fee = in_sum;
        Amount out_total{in_sum.value - fee.value};

        NormalTx tx;
        for (std::size_t i = 0; i + 1 < n_outputs; ++i) {
            Amount part{out_total.value / n_outputs};
            tx.outputs.push_back(OutputField{part, fresh_address()});
            out_total.value -= part.value;
        }
        tx.outputs.push_back(OutputField{out_total, fresh_address()});

        for (std::size_t k = 0; k < positions.size(); ++k) {
            std::size_t rel = positions[k];
            for (std::size_t j = 0; j < k; ++j)
                if (positions[j] < positions[k])
                    --rel;
            const tree::UtxoEntry& entry = utxo[positions[k]];
            const PublicKey& pk = keys_.at(entry.field.address);
            Signature sig =
                ToyScheme::instance().sign(tree::msg_to_sign(entry, tx.outputs), pk);
            tx.inputs.steps.push_back({rel, InputSig{pk, sig}});
        }
        return tx;
    }

    std::vector<std::size_t> matured_positions() const
    {
        std::vector<std::size_t> out;
        const auto& utxo = tree_.utxo();
        for (std::size_t i = 0; i < utxo.size(); ++i)
            if (utxo[i].maturation <= tree_.next_block_time())
                out.push_back(i);
        return out;
    }

    void apply(const TreeTx& tx)
    {
        REQUIRE_FALSE(tree_.check_tx(tx));
        tree_ = tree_.extend(tx);
        txs_.push_back(tx);
    }

    // Random valid extension: coinbase when nothing is spendable, otherwise
    // a mix of coinbases and spends.
    void random_step()
    {
        auto pool = matured_positions();
        if (pool.empty() || rng_.below(100) < 45) {
            apply(TreeTx{next_coinbase(1 + rng_.below(2))});
            return;
        }
        std::vector<std::size_t> picks;
        std::size_t n_in = 1 + (pool.size() >= 2 ? rng_.below(2) : 0);
        for (std::size_t k = 0; k < n_in; ++k) {
            std::size_t at = rng_.below(pool.size());
            picks.push_back(pool[at]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
        }
        apply(TreeTx{spend(std::move(picks), Amount{rng_.below(500)}, 1 + rng_.below(2))});
    }

    Rng& rng() { return rng_; }

private:
    Rng rng_;
    tree::TxTree tree_;
    std::vector<TreeTx> txs_;
    std::map<Address, PublicKey> keys_;
};

// Degenerate scheme that ignores the time in coinbase messages, so
// identical-output coinbases at different heights share a txid. Used to
// exercise collision-only error paths.
class TimeBlindScheme final : public CryptoScheme {
public:
    std::string_view name() const override { return "toy-timeblind"; }
    Digest hash_msg(const Msg& m) const override
    {
        if (m.kind() == Msg::Kind::pair && m.left().kind() == Msg::Kind::nat &&
            m.right().kind() == Msg::Kind::list)
            return base_.hash_msg(Msg::pair(Msg::nat(0), m.right()));
        return base_.hash_msg(m);
    }
    Address pubkey_to_address(const PublicKey& pk) const override
    {
        return base_.pubkey_to_address(pk);
    }
    bool verify(const Msg& m, const PublicKey& pk, const Signature& sig) const override
    {
        return base_.verify(m, pk, sig);
    }
    std::size_t pubkey_size() const override { return base_.pubkey_size(); }
    std::size_t signature_size() const override { return base_.signature_size(); }

private:
    ToyScheme base_;
};

// ---- from-scratch oracle ----

struct OracleEntry {
    OutputField field;
    Digest producing_txid;
    std::size_t output_index;
    Time maturation;
};

struct OracleState {
    std::vector<OracleEntry> utxo;
    Amount pending_fees{0};
    Time next_time = 0;
    std::vector<Digest> txids;
    Amount minted{0}; // rewards claimed by applied coinbases
};

// Folds the defining equations over the transaction list. Messages come
// from the (txid, output index) provenance tracked here, not from any tree
// state.
inline OracleState recompute(const Context& ctx, std::span<const TreeTx> txs)
{
    const CryptoScheme& scheme = *ctx.scheme;
    OracleState s;
    for (const TreeTx& tx : txs) {
        Msg msg = Msg::nat(0);
        if (const auto* cb = std::get_if<CoinbaseTx>(&tx)) {
            msg = Msg::pair(Msg::nat(cb->time), output_fields_msg(cb->outputs));
        } else {
            const auto& normal = std::get<NormalTx>(tx);
            auto origs = selection_oracle(s.utxo.size(), normal.inputs).selected_origs;
            std::vector<Msg> input_msgs;
            for (std::size_t k = 0; k < origs.size(); ++k) {
                const OracleEntry& e = s.utxo[origs[k]];
                Msg utxo_msg = Msg::pair(Msg::nat_of_bytes(e.producing_txid.bytes),
                                         Msg::nat(e.output_index));
                const InputSig& note = normal.inputs.steps[k].note;
                input_msgs.push_back(
                    Msg::pair(std::move(utxo_msg),
                              Msg::pair(Msg::nat_of_bytes(note.pubkey),
                                        Msg::nat_of_bytes(note.signature))));
            }
            msg = Msg::pair(Msg::list(std::move(input_msgs)), output_fields_msg(normal.outputs));
        }
        Digest txid = scheme.hash_msg(msg);
        s.txids.push_back(txid);

        if (const auto* cb = std::get_if<CoinbaseTx>(&tx)) {
            s.minted = checked_add(s.minted, block_reward(ctx.params.schedule, cb->time)).value();
            for (std::size_t i = 0; i < cb->outputs.size(); ++i)
                s.utxo.push_back(OracleEntry{cb->outputs[i], txid, i,
                                             cb->time + ctx.maturation_window()});
            s.pending_fees = Amount{0};
            s.next_time = cb->time + 1;
        } else {
            const auto& normal = std::get<NormalTx>(tx);
            Amount in_sum{0};
            std::vector<OracleEntry> next;
            auto origs = selection_oracle(s.utxo.size(), normal.inputs);
            for (std::size_t orig : origs.selected_origs)
                in_sum = checked_add(in_sum, s.utxo[orig].field.amount).value();
            for (std::size_t orig : origs.remainder_origs)
                next.push_back(s.utxo[orig]);
            for (std::size_t i = 0; i < normal.outputs.size(); ++i)
                next.push_back(OracleEntry{normal.outputs[i], txid, i, 0});
            Amount out_sum = sum_amounts(normal.outputs).value();
            s.pending_fees =
                checked_add(s.pending_fees,
                            checked_sub(in_sum, out_sum).value_or(Amount{0}))
                    .value();
            s.utxo = std::move(next);
        }
    }
    return s;
}

} // namespace testkit
