#include "chainkit/tree.hpp"

#include <stdexcept>

namespace chainkit::tree {

namespace {

Time sat_add_time(Time a, Time b)
{
    Time sum = a + b;
    return sum < a ? ~Time{0} : sum;
}

} // namespace

const std::vector<OutputField>& outputs_of(const TreeTx& tx)
{
    return std::visit([](const auto& t) -> const std::vector<OutputField>& { return t.outputs; }, tx);
}

std::size_t nr_outputs(const TreeTx& tx)
{
    return outputs_of(tx).size();
}

Msg msg_to_sign(const UtxoEntry& entry, std::span<const OutputField> outputs)
{
    Msg input_part = Msg::pair(
        Msg::nat_of_bytes(entry.producing_txid.bytes),
        Msg::pair(Msg::nat(entry.ref.output_index),
                  Msg::nat_of_bytes(entry.field.address.bytes)));
    return Msg::pair(std::move(input_part), output_fields_msg(outputs));
}

Time maturation_time(const Context& ctx, const TreeTx& producing_tx)
{
    if (const auto* cb = std::get_if<CoinbaseTx>(&producing_tx))
        return sat_add_time(cb->time, ctx.maturation_window());
    return 0;
}

const TreeTx& TxTree::tx_at(std::size_t pos) const
{
    if (pos >= steps_.size())
        throw IndexOutOfBounds("tx_at: position out of range");
    return steps_[pos].tx;
}

const Digest& TxTree::txid_at(std::size_t pos) const
{
    if (pos >= steps_.size())
        throw IndexOutOfBounds("txid_at: position out of range");
    return steps_[pos].txid;
}

const Msg& TxTree::msg_at(std::size_t pos) const
{
    if (pos >= steps_.size())
        throw IndexOutOfBounds("msg_at: position out of range");
    return steps_[pos].msg;
}

std::size_t TxTree::utxo_size_after(std::size_t n_txs) const
{
    if (n_txs == 0)
        return 0;
    if (n_txs > steps_.size())
        throw IndexOutOfBounds("utxo_size_after: prefix out of range");
    return steps_[n_txs - 1].utxo_len_after;
}

std::vector<OutputRef> TxTree::tx_outputs(const TreeTx& tx) const
{
    std::vector<OutputRef> refs;
    refs.reserve(nr_outputs(tx));
    for (std::size_t i : enumerate(nr_outputs(tx)))
        refs.push_back(OutputRef{steps_.size(), i});
    return refs;
}

std::vector<UtxoEntry> TxTree::utxo_minus_new_inputs(const TreeTx& tx) const
{
    if (const auto* normal = std::get_if<NormalTx>(&tx)) {
        if (!normal->inputs.valid_for(utxo_.size()))
            throw IndexOutOfBounds("utxo_minus_new_inputs: invalid input selection");
        return remainder(utxo_, normal->inputs);
    }
    return utxo_;
}

std::vector<ResolvedInput> TxTree::resolve_inputs(const InputSelection& inputs) const
{
    if (!inputs.valid_for(utxo_.size()))
        throw IndexOutOfBounds("resolve_inputs: invalid input selection");
    std::vector<ResolvedInput> out;
    out.reserve(inputs.size());
    for (const auto& picked : selected_with_orig_indices(utxo_, inputs))
        out.push_back(ResolvedInput{picked.orig_index, picked.element,
                                    picked.note.pubkey, picked.note.signature});
    return out;
}

std::optional<Amount> TxTree::sum_inputs(const InputSelection& inputs) const
{
    Amount sum{0};
    for (const ResolvedInput& input : resolve_inputs(inputs)) {
        auto next = checked_add(sum, input.entry.field.amount);
        if (!next)
            return std::nullopt;
        sum = *next;
    }
    return sum;
}

std::optional<Amount> TxTree::tx_sum_inputs(const TreeTx& tx) const
{
    if (const auto* normal = std::get_if<NormalTx>(&tx))
        return sum_inputs(normal->inputs);
    return checked_add(pending_fees_, ctx_.reward_at(next_time_));
}

Msg TxTree::tx_msg(const TreeTx& tx) const
{
    if (const auto* cb = std::get_if<CoinbaseTx>(&tx))
        return Msg::pair(Msg::nat(cb->time), output_fields_msg(cb->outputs));

    const auto& normal = std::get<NormalTx>(tx);
    std::vector<Msg> input_msgs;
    input_msgs.reserve(normal.inputs.size());
    for (const ResolvedInput& input : resolve_inputs(normal.inputs))
        input_msgs.push_back(Msg::pair(
            input.entry.msg,
            Msg::pair(Msg::nat_of_bytes(input.pubkey), Msg::nat_of_bytes(input.signature))));
    return Msg::pair(Msg::list(std::move(input_msgs)), output_fields_msg(normal.outputs));
}

Digest TxTree::tx_id(const TreeTx& tx) const
{
    return ctx_.scheme->hash_msg(tx_msg(tx));
}

Msg TxTree::utxo_msg(std::size_t i) const
{
    return utxo_msg_at(steps_.size(), i);
}

Msg TxTree::utxo_msg_at(std::size_t n_txs, std::size_t i) const
{
    if (n_txs == 0)
        throw IndexOutOfBounds("utxo_msg: genesis has no unspent outputs");
    const Step& step = steps_[n_txs - 1];
    std::size_t fresh = nr_outputs(step.tx);
    std::size_t surviving = step.utxo_len_after - fresh;

    // The UTXO list is (survivors of the parent list) ++ (fresh outputs);
    // survivors map back into the parent's list and recurse, fresh outputs
    // name the extending transaction directly.
    return concat_index_map(
        surviving, fresh,
        [&](std::size_t j) {
            if (const auto* normal = std::get_if<NormalTx>(&step.tx)) {
                std::size_t parent_len = utxo_size_after(n_txs - 1);
                return utxo_msg_at(n_txs - 1,
                                   remainder_index_to_orig(parent_len, normal->inputs, j));
            }
            return utxo_msg_at(n_txs - 1, j);
        },
        [&](std::size_t j) {
            return Msg::pair(Msg::nat_of_bytes(step.txid.bytes), Msg::nat(j));
        },
        i);
}

CheckResult TxTree::check_tx(const TreeTx& tx) const
{
    if (const auto* cb = std::get_if<CoinbaseTx>(&tx)) {
        if (cb->outputs.empty())
            return violation(ViolationKind::empty_outputs);
        auto got = sum_amounts(cb->outputs);
        auto expected = checked_add(pending_fees_, ctx_.reward_at(cb->time));
        if (!got || !expected)
            return violation(ViolationKind::amount_overflow);
        if (*got != *expected)
            return violation_mismatch(ViolationKind::wrong_coinbase_amount,
                                      expected->value, got->value);
        if (cb->time != next_time_)
            return violation_mismatch(ViolationKind::wrong_coinbase_time, next_time_, cb->time);
        return std::nullopt;
    }

    const auto& normal = std::get<NormalTx>(tx);
    if (normal.inputs.empty())
        return violation(ViolationKind::empty_inputs);
    if (normal.outputs.empty())
        return violation(ViolationKind::empty_outputs);

    std::vector<ResolvedInput> resolved = resolve_inputs(normal.inputs);

    auto in_sum = sum_inputs(normal.inputs);
    auto out_sum = sum_amounts(normal.outputs);
    if (!in_sum || !out_sum)
        return violation(ViolationKind::amount_overflow);
    if (*out_sum > *in_sum)
        return violation(ViolationKind::outputs_exceed_inputs);

    for (std::size_t k = 0; k < resolved.size(); ++k)
        if (resolved[k].entry.maturation > next_time_)
            return violation_at(ViolationKind::immature_input, k);

    for (std::size_t k = 0; k < resolved.size(); ++k) {
        const ResolvedInput& input = resolved[k];
        if (ctx_.scheme->pubkey_to_address(input.pubkey) != input.entry.field.address)
            return violation_at(ViolationKind::address_mismatch, k);
        Msg msg = msg_to_sign(input.entry, normal.outputs);
        if (!ctx_.scheme->verify(msg, input.pubkey, input.signature))
            return violation_at(ViolationKind::bad_signature, k);
    }
    return std::nullopt;
}

TxTree TxTree::extend(const TreeTx& tx) const
{
    TxTree next = *this;

    Digest txid = tx_id(tx);
    Msg msg = tx_msg(tx);
    std::vector<UtxoEntry> new_utxo = utxo_minus_new_inputs(tx);

    Time tx_time = is_coinbase(tx) ? std::get<CoinbaseTx>(tx).time : 0;
    Time maturation = maturation_time(ctx_, tx);
    const auto& outputs = outputs_of(tx);
    for (std::size_t i = 0; i < outputs.size(); ++i)
        new_utxo.push_back(UtxoEntry{
            OutputRef{steps_.size(), i},
            outputs[i],
            txid,
            maturation,
            Msg::pair(Msg::nat_of_bytes(txid.bytes), Msg::nat(i)),
        });

    if (const auto* normal = std::get_if<NormalTx>(&tx)) {
        // Fee accumulation mirrors the recursive definition: truncated
        // difference, so a structurally-extended invalid tx contributes 0.
        auto in_sum = sum_inputs(normal->inputs);
        auto out_sum = sum_amounts(normal->outputs);
        if (!in_sum || !out_sum)
            throw std::overflow_error("extend: amount overflow in fee computation");
        Amount delta = checked_sub(*in_sum, *out_sum).value_or(Amount{0});
        auto fees = checked_add(pending_fees_, delta);
        if (!fees)
            throw std::overflow_error("extend: fee accumulator overflow");
        next.pending_fees_ = *fees;
    } else {
        next.pending_fees_ = Amount{0};
        next.next_time_ = sat_add_time(tx_time, 1);
    }

    next.utxo_ = std::move(new_utxo);
    next.steps_.push_back(Step{tx, txid, std::move(msg), next.utxo_.size()});
    return next;
}

Balances TxTree::balances_from_utxo() const
{
    Balances balances;
    for (const UtxoEntry& entry : utxo_) {
        auto next = balances.credited(entry.field.address, entry.field.amount);
        if (!next)
            throw std::overflow_error("balances_from_utxo: amount overflow");
        balances = std::move(*next);
    }
    return balances;
}

std::variant<TxTree, TreeViolation> check_tree(const Context& ctx, std::span<const TreeTx> txs)
{
    TxTree tree(ctx);
    for (std::size_t i = 0; i < txs.size(); ++i) {
        if (auto v = tree.check_tx(txs[i]))
            return TreeViolation{i, *v};
        tree = tree.extend(txs[i]);
    }
    return tree;
}

std::variant<CorrectTree, Violation> CorrectTree::extend(const TreeTx& tx) const
{
    if (auto v = tree_.check_tx(tx))
        return *v;
    return CorrectTree(tree_.extend(tx));
}

} // namespace chainkit::tree
