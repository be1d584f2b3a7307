#include "chainkit/chainfile.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace chainkit::chainfile {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::uint64_t require_u64(const json& obj, const char* key)
{
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned())
        throw std::runtime_error(std::string(key) + " must be an unsigned integer");
    return v.get<std::uint64_t>();
}

std::string require_string(const json& obj, const char* key)
{
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw std::runtime_error(std::string(key) + " must be a string");
    return v.get<std::string>();
}

std::vector<OutputField> parse_outputs(const json& arr)
{
    if (!arr.is_array())
        throw std::runtime_error("outputs must be an array");
    std::vector<OutputField> outputs;
    outputs.reserve(arr.size());
    for (const auto& o : arr) {
        auto addr = address_from_hex(require_string(o, "address"));
        if (!addr)
            throw std::runtime_error("address must be 40 hex characters");
        outputs.push_back(OutputField{Amount{require_u64(o, "amount")}, *addr});
    }
    return outputs;
}

std::vector<std::uint8_t> parse_sized_hex(const json& obj, const char* key, std::size_t expected)
{
    auto bytes = from_hex(require_string(obj, key));
    if (!bytes)
        throw std::runtime_error(std::string(key) + " must be hex");
    if (expected != 0 && bytes->size() != expected)
        throw std::runtime_error(std::string(key) + " must be " + std::to_string(expected) +
                                 " bytes for this scheme");
    return *bytes;
}

merkle::MerkleTx parse_tx_json(const json& obj, const CryptoScheme& scheme)
{
    std::string type = require_string(obj, "type");
    if (type == "coinbase") {
        merkle::MerkleCoinbase cb;
        cb.time = require_u64(obj, "time");
        cb.outputs = parse_outputs(obj.at("outputs"));
        return cb;
    }
    if (type == "standard") {
        merkle::MerkleStandard std_tx;
        const auto& inputs = obj.at("inputs");
        if (!inputs.is_array())
            throw std::runtime_error("inputs must be an array");
        for (const auto& in : inputs) {
            merkle::MerkleInput input;
            auto txid = digest_from_hex(require_string(in, "txid"));
            if (!txid)
                throw std::runtime_error("txid must be 64 hex characters");
            input.txid = *txid;
            input.output_nr = require_u64(in, "output_nr");
            input.pubkey = parse_sized_hex(in, "pubkey", scheme.pubkey_size());
            input.signature = parse_sized_hex(in, "signature", scheme.signature_size());
            std_tx.inputs.push_back(std::move(input));
        }
        std_tx.outputs = parse_outputs(obj.at("outputs"));
        return std_tx;
    }
    throw std::runtime_error("type must be \"coinbase\" or \"standard\"");
}

ordered_json outputs_json(std::span<const OutputField> outputs)
{
    ordered_json arr = ordered_json::array();
    for (const OutputField& o : outputs)
        arr.push_back({{"amount", o.amount.value}, {"address", to_hex(o.address)}});
    return arr;
}

bool blank(const std::string& line)
{
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

} // namespace

const CryptoScheme* scheme_by_name(const std::string& name)
{
    if (name == "toy-v1")
        return &ToyScheme::instance();
    return nullptr;
}

std::variant<ParsedChain, ParseError> parse_chain(const std::string& contents)
{
    std::istringstream in(contents);
    std::string line;
    std::size_t line_number = 0;

    ParsedChain chain;
    const CryptoScheme* scheme = nullptr;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_number;
        if (blank(line))
            continue;
        try {
            json obj = json::parse(line);
            if (!have_header) {
                int format = obj.at("format").get<int>();
                if (format != kFormatVersion)
                    return ParseError{line_number,
                                      "unsupported format " + std::to_string(format)};
                chain.header.format = format;
                chain.header.params.schedule.initial_reward = Amount{require_u64(obj, "reward_initial")};
                chain.header.params.schedule.halving_interval = require_u64(obj, "halving");
                chain.header.params.schedule.cutoff_height = require_u64(obj, "cutoff");
                if (chain.header.params.schedule.halving_interval == 0)
                    return ParseError{line_number, "halving must be positive"};
                chain.header.params.maturation_window = require_u64(obj, "maturation");
                chain.header.scheme = require_string(obj, "scheme");
                scheme = scheme_by_name(chain.header.scheme);
                if (!scheme)
                    return ParseError{line_number, "unknown scheme \"" + chain.header.scheme + "\""};
                have_header = true;
            } else {
                chain.txs.push_back(NumberedTx{line_number, parse_tx_json(obj, *scheme)});
            }
        } catch (const json::exception& e) {
            return ParseError{line_number, e.what()};
        } catch (const std::exception& e) {
            return ParseError{line_number, e.what()};
        }
    }
    if (!have_header)
        return ParseError{1, "missing header line"};
    return chain;
}

std::variant<merkle::MerkleTx, ParseError> parse_tx_line(const std::string& line,
                                                         const CryptoScheme& scheme,
                                                         std::size_t line_number)
{
    try {
        return parse_tx_json(json::parse(line), scheme);
    } catch (const std::exception& e) {
        return ParseError{line_number, e.what()};
    }
}

std::string header_line(const ChainHeader& header)
{
    ordered_json obj = {
        {"format", header.format},
        {"reward_initial", header.params.schedule.initial_reward.value},
        {"halving", header.params.schedule.halving_interval},
        {"cutoff", header.params.schedule.cutoff_height},
        {"maturation", header.params.maturation_window},
        {"scheme", header.scheme},
    };
    return obj.dump();
}

std::string tx_line(const merkle::MerkleTx& tx)
{
    ordered_json obj;
    if (const auto* cb = std::get_if<merkle::MerkleCoinbase>(&tx)) {
        obj = {{"type", "coinbase"}, {"time", cb->time}, {"outputs", outputs_json(cb->outputs)}};
    } else {
        const auto& std_tx = std::get<merkle::MerkleStandard>(tx);
        ordered_json inputs = ordered_json::array();
        for (const merkle::MerkleInput& in : std_tx.inputs)
            inputs.push_back({{"txid", to_hex(in.txid)},
                              {"output_nr", in.output_nr},
                              {"pubkey", to_hex(in.pubkey)},
                              {"signature", to_hex(in.signature)}});
        obj = {{"type", "standard"}, {"inputs", inputs}, {"outputs", outputs_json(std_tx.outputs)}};
    }
    return obj.dump();
}

ValidationOutcome validate_chain(const Context& ctx, const std::vector<NumberedTx>& txs)
{
    ValidationOutcome outcome{ValidationReport{}, tree::CorrectTree::genesis(ctx)};
    ValidationReport& report = outcome.report;

    Amount minted{0};
    for (const NumberedTx& ntx : txs) {
        auto result = merkle::apply_merkle(outcome.tree, ntx.tx);
        if (const auto* v = std::get_if<Violation>(&result)) {
            report.accepted = false;
            report.rejection = Rejection{ntx.line, *v};
            break;
        }
        if (const auto* cb = std::get_if<merkle::MerkleCoinbase>(&ntx.tx)) {
            ++report.coinbase_count;
            auto next = checked_add(minted, ctx.reward_at(cb->time));
            if (next)
                minted = *next;
        }
        ++report.tx_count;
        outcome.tree = std::get<tree::CorrectTree>(std::move(result));
    }

    const tree::TxTree& final_tree = outcome.tree.tree();
    report.rewards_minted = minted;
    report.pending_fees = final_tree.pending_fees();
    report.utxo_count = final_tree.utxo().size();
    report.balances = final_tree.balances_from_utxo();
    report.utxo_total = report.balances.total().value_or(Amount{0});
    auto lhs = checked_add(report.utxo_total, report.pending_fees);
    report.conservation_holds = lhs && *lhs == report.rewards_minted;
    return outcome;
}

std::string report_json(const ValidationReport& report)
{
    ordered_json obj;
    obj["status"] = report.accepted ? "accepted" : "rejected";
    if (report.rejection) {
        obj["line"] = report.rejection->line;
        obj["violation"] = violation_name(report.rejection->violation.kind);
        if (report.rejection->violation.input_index)
            obj["input"] = *report.rejection->violation.input_index;
        if (report.rejection->violation.expected) {
            obj["expected"] = *report.rejection->violation.expected;
            obj["got"] = report.rejection->violation.got.value_or(0);
        }
    }
    obj["txs"] = report.tx_count;
    obj["coinbases"] = report.coinbase_count;
    obj["rewards_minted"] = report.rewards_minted.value;
    obj["pending_fees"] = report.pending_fees.value;
    obj["utxo"] = {{"count", report.utxo_count}, {"total", report.utxo_total.value}};
    ordered_json balances = ordered_json::object();
    for (const auto& [addr, amount] : report.balances.entries())
        balances[to_hex(addr)] = amount.value;
    obj["balances"] = std::move(balances);
    obj["conservation_holds"] = report.conservation_holds;
    return obj.dump();
}

std::string report_human(const ValidationReport& report)
{
    std::ostringstream out;
    if (report.accepted) {
        out << "accepted: " << report.tx_count << " transactions ("
            << report.coinbase_count << " coinbases)\n";
    } else {
        out << "rejected at line " << report.rejection->line << ": "
            << report.rejection->violation.describe() << "\n";
        out << "accepted before failure: " << report.tx_count << " transactions\n";
    }
    out << "rewards minted: " << report.rewards_minted.value << "\n";
    out << "pending fees:   " << report.pending_fees.value << "\n";
    out << "utxo:           " << report.utxo_count << " entries, total "
        << report.utxo_total.value << "\n";
    out << "conservation:   " << (report.conservation_holds ? "holds" : "violated") << "\n";
    for (const auto& [addr, amount] : report.balances.entries())
        out << "  " << to_hex(addr) << "  " << amount.value << "\n";
    return out.str();
}

std::string utxo_report_json(const tree::TxTree& tr)
{
    struct Row {
        std::string txid;
        std::uint64_t output_nr;
        std::uint64_t amount;
        std::string address;
        Time maturation;
    };
    std::vector<Row> rows;
    rows.reserve(tr.utxo().size());
    for (const tree::UtxoEntry& e : tr.utxo())
        rows.push_back(Row{to_hex(e.producing_txid), e.ref.output_index,
                           e.field.amount.value, to_hex(e.field.address), e.maturation});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.txid, a.output_nr) < std::tie(b.txid, b.output_nr);
    });
    ordered_json arr = ordered_json::array();
    for (const Row& r : rows)
        arr.push_back({{"txid", r.txid},
                       {"output_nr", r.output_nr},
                       {"amount", r.amount},
                       {"address", r.address},
                       {"maturation", r.maturation}});
    return arr.dump();
}

std::string balances_report_json(const Balances& balances)
{
    ordered_json obj = ordered_json::object();
    for (const auto& [addr, amount] : balances.entries())
        obj[to_hex(addr)] = amount.value;
    return obj.dump();
}

std::string fees_report_json(const tree::TxTree& tr)
{
    ordered_json obj = {{"pending_fees", tr.pending_fees().value}};
    return obj.dump();
}

} // namespace chainkit::chainfile
