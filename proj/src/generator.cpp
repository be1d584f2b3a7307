#include "chainkit/generator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace chainkit::gen {

namespace {

using merkle::MerkleCoinbase;
using merkle::MerkleInput;
using merkle::MerkleStandard;
using merkle::MerkleTx;
using tree::CoinbaseTx;
using tree::CorrectTree;
using tree::InputSig;
using tree::NormalTx;
using tree::TreeTx;
using tree::UtxoEntry;

// splitmix64; fixed here so identical seeds give identical files on every
// platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

// What the fault plan forces at a transaction index.
enum class Directive {
    organic,
    coinbase,                 // setup: a plain valid coinbase
    standard,                 // setup: a plain valid standard tx
    fault_double_spend,       // verbatim copy of the previous standard line
    fault_bad_signature,      // standard tx with a flipped signature byte
    fault_premature_spend,    // spend the previous coinbase's fresh output
    fault_coinbase_amount,    // coinbase claiming one unit too much
    fault_coinbase_time,      // coinbase claiming the next-but-one height
    fault_duplicate_coinbase, // verbatim copy of the previous coinbase line
};

struct Planner {
    std::map<std::size_t, Directive> directives;

    void force(std::size_t index, Directive d) { directives[index] = d; }

    Directive at(std::size_t index) const
    {
        auto it = directives.find(index);
        return it == directives.end() ? Directive::organic : it->second;
    }
};

class ChainBuilder {
public:
    explicit ChainBuilder(const GenConfig& config)
        : config_(config),
          rng_(config.seed),
          ctx_{&ToyScheme::instance(), config.params},
          tree_(CorrectTree::genesis(ctx_))
    {
    }

    std::string run();

private:
    const ToyScheme& scheme() const { return ToyScheme::instance(); }

    Address fresh_address()
    {
        PublicKey pk = scheme().keygen(rng_.next());
        Address addr = scheme().pubkey_to_address(pk);
        keys_[addr] = pk;
        return addr;
    }

    std::vector<OutputField> split_amount(Amount total)
    {
        std::size_t n = total.value >= 2 && rng_.below(2) == 0 ? 2 : 1;
        std::vector<OutputField> outputs;
        if (n == 2) {
            Amount first{1 + rng_.below(total.value - 1)};
            outputs.push_back(OutputField{first, fresh_address()});
            outputs.push_back(OutputField{Amount{total.value - first.value}, fresh_address()});
        } else {
            outputs.push_back(OutputField{total, fresh_address()});
        }
        return outputs;
    }

    // Entries spendable at the current height and owned by generated keys.
    std::vector<std::size_t> matured_positions() const
    {
        std::vector<std::size_t> out;
        const auto& utxo = tree_.tree().utxo();
        for (std::size_t i = 0; i < utxo.size(); ++i)
            if (utxo[i].maturation <= tree_.tree().next_block_time())
                out.push_back(i);
        return out;
    }

    CoinbaseTx make_coinbase()
    {
        Time t = tree_.tree().next_block_time();
        Amount claim = checked_add(tree_.tree().pending_fees(), ctx_.reward_at(t)).value();
        return CoinbaseTx{t, split_amount(claim)};
    }

    // Spend the given UTXO positions (absolute indices, distinct) with
    // valid signatures. fee is clamped to the input sum.
    NormalTx make_standard(std::vector<std::size_t> positions, Amount fee)
    {
        const auto& utxo = tree_.tree().utxo();
        Amount in_sum{0};
        for (std::size_t p : positions)
            in_sum = checked_add(in_sum, utxo[p].field.amount).value();
        if (fee > in_sum)
            fee = in_sum;
        std::vector<OutputField> outputs = split_amount(Amount{in_sum.value - fee.value});

        NormalTx tx;
        tx.outputs = std::move(outputs);
        // Convert absolute positions to step-relative indices: each earlier
        // pick below a position shifts it down one.
        for (std::size_t k = 0; k < positions.size(); ++k) {
            std::size_t rel = positions[k];
            for (std::size_t j = 0; j < k; ++j)
                if (positions[j] < positions[k])
                    --rel;
            const UtxoEntry& entry = utxo[positions[k]];
            const PublicKey& pk = keys_.at(entry.field.address);
            Signature sig = scheme().sign(tree::msg_to_sign(entry, tx.outputs), pk);
            tx.inputs.steps.push_back({rel, InputSig{pk, sig}});
        }
        return tx;
    }

    NormalTx make_organic_standard()
    {
        std::vector<std::size_t> pool = matured_positions();
        if (pool.empty())
            throw std::invalid_argument(
                "fault plan leaves no spendable output; move the fault to a later line");
        std::size_t n_in = 1 + (pool.size() >= 2 ? rng_.below(2) : 0);
        std::vector<std::size_t> picks;
        for (std::size_t k = 0; k < n_in; ++k) {
            std::size_t at = rng_.below(pool.size());
            picks.push_back(pool[at]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
        }
        return make_standard(std::move(picks), Amount{rng_.below(1000)});
    }

    void emit_valid(const TreeTx& tx)
    {
        MerkleTx wire = merkle::to_merkle(tree_.tree(), tx);
        lines_.push_back(chainfile::tx_line(wire));
        auto extended = tree_.extend(tx);
        if (std::holds_alternative<Violation>(extended))
            throw std::logic_error("generator produced an invalid transaction: " +
                                   std::get<Violation>(extended).describe());
        tree_ = std::get<CorrectTree>(std::move(extended));
        if (is_coinbase(tx))
            last_coinbase_line_ = lines_.size() - 1;
        else
            last_standard_line_ = lines_.size() - 1;
    }

    // Faulty lines go to the file only; the builder's own state skips them,
    // so every later line stays valid relative to the accepted prefix.
    void emit_raw(const MerkleTx& wire) { lines_.push_back(chainfile::tx_line(wire)); }

    void step(Directive directive);

    const GenConfig& config_;
    Rng rng_;
    Context ctx_;
    CorrectTree tree_;
    std::map<Address, PublicKey> keys_;
    std::vector<std::string> lines_; // transaction lines, in order
    std::optional<std::size_t> last_coinbase_line_;
    std::optional<std::size_t> last_standard_line_;
};

void ChainBuilder::step(Directive directive)
{
    switch (directive) {
    case Directive::organic: {
        bool can_spend = !matured_positions().empty();
        if (can_spend && rng_.below(100) < 55)
            emit_valid(TreeTx{make_organic_standard()});
        else
            emit_valid(TreeTx{make_coinbase()});
        return;
    }
    case Directive::coinbase:
        emit_valid(TreeTx{make_coinbase()});
        return;
    case Directive::standard:
        emit_valid(TreeTx{make_organic_standard()});
        return;
    case Directive::fault_double_spend:
        if (!last_standard_line_)
            throw std::invalid_argument("double-spend fault needs a prior standard transaction");
        lines_.push_back(lines_[*last_standard_line_]);
        return;
    case Directive::fault_bad_signature: {
        NormalTx tx = make_organic_standard();
        MerkleTx wire = merkle::to_merkle(tree_.tree(), TreeTx{tx});
        auto& std_tx = std::get<MerkleStandard>(wire);
        std_tx.inputs.front().signature.front() ^= 0x01;
        emit_raw(wire);
        return;
    }
    case Directive::fault_premature_spend: {
        // Previous line was a coinbase; its outputs are still maturing.
        const auto& utxo = tree_.tree().utxo();
        if (utxo.empty())
            throw std::invalid_argument("premature-spend fault needs a prior coinbase");
        NormalTx tx = make_standard({utxo.size() - 1}, Amount{0});
        emit_raw(merkle::to_merkle(tree_.tree(), TreeTx{tx}));
        return;
    }
    case Directive::fault_coinbase_amount: {
        CoinbaseTx cb = make_coinbase();
        cb.outputs.front().amount.value += 1;
        emit_raw(merkle::to_merkle(tree_.tree(), TreeTx{cb}));
        return;
    }
    case Directive::fault_coinbase_time: {
        CoinbaseTx cb = make_coinbase();
        Time claimed = cb.time + 1;
        // Recompute the claim for the claimed height so only the time rule
        // trips, not the amount rule.
        Amount claim = checked_add(tree_.tree().pending_fees(), ctx_.reward_at(claimed)).value();
        cb.time = claimed;
        cb.outputs = split_amount(claim);
        emit_raw(merkle::to_merkle(tree_.tree(), TreeTx{cb}));
        return;
    }
    case Directive::fault_duplicate_coinbase:
        if (!last_coinbase_line_)
            throw std::invalid_argument("duplicate-coinbase fault needs a prior coinbase");
        lines_.push_back(lines_[*last_coinbase_line_]);
        return;
    }
}

std::string ChainBuilder::run()
{
    Planner plan;
    for (const FaultSpec& fault : config_.faults) {
        if (fault.line < 2 || fault.line >= 2 + config_.n_txs)
            throw std::invalid_argument("fault line " + std::to_string(fault.line) +
                                        " outside transaction lines 2.." +
                                        std::to_string(config_.n_txs + 1));
        if (fault.line < min_fault_line(fault.kind))
            throw std::invalid_argument(std::string(fault_name(fault.kind)) +
                                        " needs a line >= " +
                                        std::to_string(min_fault_line(fault.kind)));
        std::size_t index = fault.line - 2;
        switch (fault.kind) {
        case FaultKind::double_spend:
            plan.force(index - 1, Directive::standard);
            plan.force(index, Directive::fault_double_spend);
            break;
        case FaultKind::bad_signature:
            plan.force(index, Directive::fault_bad_signature);
            break;
        case FaultKind::premature_spend:
            plan.force(index - 1, Directive::coinbase);
            plan.force(index, Directive::fault_premature_spend);
            break;
        case FaultKind::wrong_coinbase_amount:
            plan.force(index, Directive::fault_coinbase_amount);
            break;
        case FaultKind::wrong_coinbase_time:
            plan.force(index, Directive::fault_coinbase_time);
            break;
        case FaultKind::duplicate_coinbase_outputs:
            // The copied coinbase must have claimed zero fees, so park a
            // fee-absorbing coinbase right before it.
            if (index >= 2)
                plan.force(index - 2, Directive::coinbase);
            plan.force(index - 1, Directive::coinbase);
            plan.force(index, Directive::fault_duplicate_coinbase);
            break;
        }
    }

    // The first two transactions are always coinbases: nothing is spendable
    // before two blocks exist under the default 2-block maturation.
    for (std::size_t i = 0; i < config_.n_txs; ++i) {
        Directive d = plan.at(i);
        if (d == Directive::organic && i < 2)
            d = Directive::coinbase;
        step(d);
    }

    chainfile::ChainHeader header;
    header.params = config_.params;
    header.scheme = std::string(scheme().name());
    std::string out = chainfile::header_line(header);
    out.push_back('\n');
    for (const std::string& line : lines_) {
        out += line;
        out.push_back('\n');
    }
    return out;
}

} // namespace

const char* fault_name(FaultKind kind)
{
    switch (kind) {
    case FaultKind::double_spend: return "DoubleSpend";
    case FaultKind::bad_signature: return "BadSignature";
    case FaultKind::premature_spend: return "PrematureSpend";
    case FaultKind::wrong_coinbase_amount: return "WrongCoinbaseAmount";
    case FaultKind::wrong_coinbase_time: return "WrongCoinbaseTime";
    case FaultKind::duplicate_coinbase_outputs: return "DuplicateCoinbaseOutputs";
    }
    return "Unknown";
}

std::optional<FaultKind> fault_by_name(const std::string& name)
{
    for (FaultKind kind : {FaultKind::double_spend, FaultKind::bad_signature,
                           FaultKind::premature_spend, FaultKind::wrong_coinbase_amount,
                           FaultKind::wrong_coinbase_time, FaultKind::duplicate_coinbase_outputs})
        if (name == fault_name(kind))
            return kind;
    return std::nullopt;
}

ViolationKind expected_violation(FaultKind kind)
{
    switch (kind) {
    case FaultKind::double_spend: return ViolationKind::unknown_outpoint;
    case FaultKind::bad_signature: return ViolationKind::bad_signature;
    case FaultKind::premature_spend: return ViolationKind::immature_input;
    case FaultKind::wrong_coinbase_amount: return ViolationKind::wrong_coinbase_amount;
    case FaultKind::wrong_coinbase_time: return ViolationKind::wrong_coinbase_time;
    case FaultKind::duplicate_coinbase_outputs: return ViolationKind::wrong_coinbase_time;
    }
    return ViolationKind::unknown_outpoint;
}

std::size_t min_fault_line(FaultKind kind)
{
    switch (kind) {
    case FaultKind::wrong_coinbase_amount:
    case FaultKind::wrong_coinbase_time:
        return 2; // any transaction line
    case FaultKind::premature_spend:
    case FaultKind::duplicate_coinbase_outputs:
        return 3; // needs a coinbase on the line before
    case FaultKind::bad_signature:
        return 4; // needs a matured output: two coinbases first
    case FaultKind::double_spend:
        return 5; // needs a valid standard tx on the line before
    }
    return 2;
}

std::optional<FaultSpec> parse_fault(const std::string& text)
{
    auto at = text.find('@');
    if (at == std::string::npos)
        return std::nullopt;
    auto kind = fault_by_name(text.substr(0, at));
    if (!kind)
        return std::nullopt;
    try {
        std::size_t pos = 0;
        unsigned long long line = std::stoull(text.substr(at + 1), &pos);
        if (at + 1 + pos != text.size())
            return std::nullopt;
        return FaultSpec{*kind, static_cast<std::size_t>(line)};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string generate_chain(const GenConfig& config)
{
    return ChainBuilder(config).run();
}

} // namespace chainkit::gen
