#include "chainkit/merkle.hpp"

#include <algorithm>
#include <set>

namespace chainkit::merkle {

using tree::CoinbaseTx;
using tree::InputSig;
using tree::NormalTx;
using tree::TreeTx;

MerkleTx to_merkle(const tree::TxTree& tr, const TreeTx& tx)
{
    if (const auto* cb = std::get_if<CoinbaseTx>(&tx))
        return MerkleCoinbase{cb->time, cb->outputs};

    const auto& normal = std::get<NormalTx>(tx);
    MerkleStandard out;
    out.outputs = normal.outputs;
    for (const tree::ResolvedInput& input : tr.resolve_inputs(normal.inputs))
        out.inputs.push_back(MerkleInput{input.entry.producing_txid,
                                         input.entry.ref.output_index,
                                         input.pubkey, input.signature});
    return out;
}

bool corresponds(const MerkleTx& m, const tree::TxTree& tr, const TreeTx& tx)
{
    if (const auto* mcb = std::get_if<MerkleCoinbase>(&m)) {
        const auto* cb = std::get_if<CoinbaseTx>(&tx);
        return cb && mcb->time == cb->time && mcb->outputs == cb->outputs;
    }
    const auto& mstd = std::get<MerkleStandard>(m);
    const auto* normal = std::get_if<NormalTx>(&tx);
    if (!normal)
        return false;
    MerkleTx mapped = to_merkle(tr, tx);
    const auto& mapped_std = std::get<MerkleStandard>(mapped);
    return mstd.inputs == mapped_std.inputs && mstd.outputs == normal->outputs;
}

std::variant<TreeTx, Violation> resolve(const tree::CorrectTree& ct, const MerkleTx& m)
{
    if (const auto* mcb = std::get_if<MerkleCoinbase>(&m))
        return TreeTx{CoinbaseTx{mcb->time, mcb->outputs}};

    const auto& mstd = std::get<MerkleStandard>(m);
    // Claim entries in input order, recomputing step-relative indices as
    // the working copy shrinks.
    std::vector<tree::UtxoEntry> working = ct.tree().utxo();
    std::set<std::pair<Digest, std::uint64_t>> claimed;

    NormalTx out;
    out.outputs = mstd.outputs;
    for (std::size_t k = 0; k < mstd.inputs.size(); ++k) {
        const MerkleInput& input = mstd.inputs[k];
        auto outpoint = std::make_pair(input.txid, input.output_nr);
        if (claimed.contains(outpoint))
            return violation_at(ViolationKind::duplicate_outpoint, k);

        std::size_t match_count = 0;
        std::size_t match_pos = 0;
        for (std::size_t i = 0; i < working.size(); ++i)
            if (working[i].producing_txid == input.txid &&
                working[i].ref.output_index == input.output_nr) {
                ++match_count;
                match_pos = i;
            }
        if (match_count == 0)
            return violation_at(ViolationKind::unknown_outpoint, k);
        if (match_count > 1)
            return violation_at(ViolationKind::ambiguous_outpoint, k);

        claimed.insert(outpoint);
        out.inputs.steps.push_back({match_pos, InputSig{input.pubkey, input.signature}});
        working.erase(working.begin() + static_cast<std::ptrdiff_t>(match_pos));
    }
    return TreeTx{std::move(out)};
}

std::variant<tree::CorrectTree, Violation> apply_merkle(const tree::CorrectTree& ct,
                                                        const MerkleTx& m)
{
    auto resolved = resolve(ct, m);
    if (const auto* v = std::get_if<Violation>(&resolved))
        return *v;
    auto extended = ct.extend(std::get<TreeTx>(resolved));
    if (const auto* v = std::get_if<Violation>(&extended))
        return *v;
    return std::get<tree::CorrectTree>(std::move(extended));
}

} // namespace chainkit::merkle
