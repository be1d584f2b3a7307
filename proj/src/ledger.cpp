#include "chainkit/ledger.hpp"

namespace chainkit::ledger {

Msg field_msg(const TxField& field)
{
    return output_field_msg(field);
}

Msg fields_msg(std::span<const TxField> fields)
{
    return output_fields_msg(fields);
}

Msg input_signing_msg(const TxField& input, std::span<const TxField> outputs)
{
    return Msg::pair(field_msg(input), fields_msg(outputs));
}

std::optional<Amount> total_amount(std::span<const TxField> fields)
{
    return sum_amounts(fields);
}

CheckResult check_tx(const CryptoScheme& scheme, const Balances& balances, const LedgerTx& tx)
{
    const auto& inputs = tx.tx.inputs;
    const auto& outputs = tx.tx.outputs;

    if (inputs.empty())
        return violation(ViolationKind::empty_inputs);
    if (outputs.empty())
        return violation(ViolationKind::empty_outputs);

    auto in_total = total_amount(inputs);
    auto out_total = total_amount(outputs);
    if (!in_total || !out_total)
        return violation(ViolationKind::amount_overflow);
    if (*out_total > *in_total)
        return violation(ViolationKind::outputs_exceed_inputs);

    if (tx.sigs.size() != inputs.size())
        return violation_at(ViolationKind::bad_signature_ledger,
                            std::min(tx.sigs.size(), inputs.size()));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const SignatureBundle& bundle = tx.sigs[k];
        if (scheme.pubkey_to_address(bundle.pubkey) != inputs[k].address)
            return violation_at(ViolationKind::bad_address, k);
        Msg msg = input_signing_msg(inputs[k], outputs);
        if (!scheme.verify(msg, bundle.pubkey, bundle.signature))
            return violation_at(ViolationKind::bad_signature_ledger, k);
    }

    // Inputs are covered sequentially: each one is subtracted before the
    // next is checked, so two spends from one address cannot both ride on
    // the same balance.
    Balances working = balances;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        auto next = working.debited(inputs[k].address, inputs[k].amount);
        if (!next)
            return violation_at(ViolationKind::insufficient_balance, k);
        working = std::move(*next);
    }
    return std::nullopt;
}

CheckResult apply_tx(Balances& balances, const LedgerTx& tx)
{
    Balances working = balances;
    for (const TxField& input : tx.tx.inputs) {
        auto next = working.debited(input.address, input.amount);
        if (!next)
            return violation(ViolationKind::balance_underflow);
        working = std::move(*next);
    }
    for (const TxField& output : tx.tx.outputs) {
        auto next = working.credited(output.address, output.amount);
        if (!next)
            return violation(ViolationKind::amount_overflow);
        working = std::move(*next);
    }
    balances = std::move(working);
    return std::nullopt;
}

std::optional<Amount> tx_fee(const LedgerTx& tx)
{
    auto in_total = total_amount(tx.tx.inputs);
    auto out_total = total_amount(tx.tx.outputs);
    if (!in_total || !out_total)
        return std::nullopt;
    return checked_sub(*in_total, *out_total);
}

std::optional<Amount> block_fee(const Block& block)
{
    Amount sum{0};
    for (const LedgerTx& tx : block.txs) {
        auto fee = tx_fee(tx);
        if (!fee)
            return std::nullopt;
        auto next = checked_add(sum, *fee);
        if (!next)
            return std::nullopt;
        sum = *next;
    }
    return sum;
}

std::optional<BlockViolation> check_block(const CryptoScheme& scheme, const Balances& balances,
                                          const Block& block, Time t, const RewardSchedule& schedule)
{
    Balances working = balances;
    for (std::size_t i = 0; i < block.txs.size(); ++i) {
        if (auto v = check_tx(scheme, working, block.txs[i]))
            return BlockViolation{i, *v};
        if (auto v = apply_tx(working, block.txs[i]))
            return BlockViolation{i, *v};
    }

    auto fees = block_fee(block);
    auto miner_total = total_amount(block.miner_outputs);
    if (!fees || !miner_total)
        return BlockViolation{std::nullopt, violation(ViolationKind::amount_overflow)};
    auto expected = checked_add(block_reward(schedule, t), *fees);
    if (!expected)
        return BlockViolation{std::nullopt, violation(ViolationKind::amount_overflow)};
    if (*miner_total != *expected)
        return BlockViolation{std::nullopt,
                              violation_mismatch(ViolationKind::wrong_miner_amount,
                                                 expected->value, miner_total->value)};
    return std::nullopt;
}

CheckResult apply_block(Balances& balances, const Block& block)
{
    Balances working = balances;
    for (const LedgerTx& tx : block.txs)
        if (auto v = apply_tx(working, tx))
            return v;
    for (const TxField& output : block.miner_outputs) {
        auto next = working.credited(output.address, output.amount);
        if (!next)
            return violation(ViolationKind::amount_overflow);
        working = std::move(*next);
    }
    balances = std::move(working);
    return std::nullopt;
}

std::optional<ChainViolation> check_chain(const CryptoScheme& scheme, const Chain& chain)
{
    Balances working;
    Time t = chain.start_time;
    for (std::size_t i = 0; i < chain.blocks.size(); ++i, ++t) {
        if (auto v = check_block(scheme, working, chain.blocks[i], t, chain.schedule))
            return ChainViolation{i, *v};
        if (auto v = apply_block(working, chain.blocks[i]))
            return ChainViolation{i, BlockViolation{std::nullopt, *v}};
    }
    return std::nullopt;
}

FinalLedgerResult final_ledger(const Chain& chain)
{
    FinalLedgerResult result;
    for (const Block& block : chain.blocks)
        if ((result.error = apply_block(result.balances, block)))
            return result;
    return result;
}

} // namespace chainkit::ledger
