#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chainkit/chainfile.hpp"
#include "chainkit/generator.hpp"

namespace {

using namespace chainkit;

// Exit codes: 0 valid, 1 invalid chain, 2 malformed input / usage error.
constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitMalformed = 2;

struct ScheduleOverrides {
    std::optional<std::uint64_t> initial;
    std::optional<std::uint64_t> halving;
    std::optional<std::uint64_t> cutoff;
    std::optional<std::uint64_t> maturation;

    void apply(ChainParams& params) const
    {
        if (initial)
            params.schedule.initial_reward = Amount{*initial};
        if (halving) {
            if (*halving == 0) {
                std::cerr << "error: --schedule-halving must be positive\n";
                std::exit(kExitMalformed);
            }
            params.schedule.halving_interval = *halving;
        }
        if (cutoff)
            params.schedule.cutoff_height = *cutoff;
        if (maturation)
            params.maturation_window = *maturation;
    }
};

void add_schedule_flags(CLI::App* cmd, ScheduleOverrides& overrides)
{
    cmd->add_option("--schedule-initial", overrides.initial,
                    "Initial block reward in atomic units");
    cmd->add_option("--schedule-halving", overrides.halving,
                    "Blocks between reward halvings");
    cmd->add_option("--schedule-cutoff", overrides.cutoff,
                    "Height from which the reward is zero");
    cmd->add_option("--maturation", overrides.maturation,
                    "Coinbase maturation window in blocks");
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct LoadedChain {
    chainfile::ParsedChain parsed;
    Context ctx;
};

// Parses the file and builds the validation context, exiting with 2 on any
// malformation.
LoadedChain load_chain_or_exit(const std::string& path, const ScheduleOverrides& overrides)
{
    auto contents = read_file(path);
    if (!contents) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(kExitMalformed);
    }
    auto parsed = chainfile::parse_chain(*contents);
    if (const auto* err = std::get_if<chainfile::ParseError>(&parsed)) {
        std::cerr << "error: " << path << ":" << err->line << ": " << err->message << "\n";
        std::exit(kExitMalformed);
    }
    LoadedChain loaded{std::get<chainfile::ParsedChain>(std::move(parsed)), Context{}};
    loaded.ctx.scheme = chainfile::scheme_by_name(loaded.parsed.header.scheme);
    loaded.ctx.params = loaded.parsed.header.params;
    overrides.apply(loaded.ctx.params);
    return loaded;
}

int cmd_validate(const std::string& path, const ScheduleOverrides& overrides, bool human)
{
    LoadedChain loaded = load_chain_or_exit(path, overrides);
    auto outcome = chainfile::validate_chain(loaded.ctx, loaded.parsed.txs);
    std::cout << (human ? chainfile::report_human(outcome.report)
                        : chainfile::report_json(outcome.report) + "\n");
    return outcome.report.accepted ? kExitValid : kExitInvalid;
}

int cmd_report(const std::string& path, const std::string& which,
               const ScheduleOverrides& overrides)
{
    LoadedChain loaded = load_chain_or_exit(path, overrides);
    auto outcome = chainfile::validate_chain(loaded.ctx, loaded.parsed.txs);
    if (!outcome.report.accepted) {
        std::cerr << "error: chain rejected at line " << outcome.report.rejection->line << ": "
                  << outcome.report.rejection->violation.describe() << "\n";
        return kExitInvalid;
    }
    const tree::TxTree& tr = outcome.tree.tree();
    if (which == "utxo")
        std::cout << chainfile::utxo_report_json(tr) << "\n";
    else if (which == "balances")
        std::cout << chainfile::balances_report_json(tr.balances_from_utxo()) << "\n";
    else
        std::cout << chainfile::fees_report_json(tr) << "\n";
    return kExitValid;
}

int cmd_txid(const std::string& path, const std::string& context_path,
             const ScheduleOverrides& overrides)
{
    auto contents = read_file(path);
    if (!contents) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitMalformed;
    }
    // First non-blank line is the transaction.
    std::istringstream in(*contents);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r\n") != std::string::npos)
            break;
        line.clear();
    }
    if (line.empty()) {
        std::cerr << "error: " << path << ": no transaction line\n";
        return kExitMalformed;
    }

    const CryptoScheme& default_scheme = ToyScheme::instance();
    auto parsed = chainfile::parse_tx_line(line, default_scheme, line_number);
    if (const auto* err = std::get_if<chainfile::ParseError>(&parsed)) {
        std::cerr << "error: " << path << ":" << err->line << ": " << err->message << "\n";
        return kExitMalformed;
    }
    const merkle::MerkleTx& tx = std::get<merkle::MerkleTx>(parsed);

    if (std::holds_alternative<merkle::MerkleCoinbase>(tx)) {
        // Coinbase ids are context-free.
        Context ctx;
        tree::TxTree genesis(ctx);
        const auto& cb = std::get<merkle::MerkleCoinbase>(tx);
        std::cout << to_hex(genesis.tx_id(tree::TreeTx{tree::CoinbaseTx{cb.time, cb.outputs}}))
                  << "\n";
        return kExitValid;
    }

    if (context_path.empty()) {
        std::cerr << "error: standard transactions need --context <chain file> to resolve "
                     "their inputs\n";
        return kExitMalformed;
    }
    LoadedChain loaded = load_chain_or_exit(context_path, overrides);
    auto outcome = chainfile::validate_chain(loaded.ctx, loaded.parsed.txs);
    if (!outcome.report.accepted) {
        std::cerr << "error: context chain rejected at line " << outcome.report.rejection->line
                  << ": " << outcome.report.rejection->violation.describe() << "\n";
        return kExitInvalid;
    }
    auto resolved = merkle::resolve(outcome.tree, tx);
    if (const auto* v = std::get_if<Violation>(&resolved)) {
        std::cerr << "error: " << v->describe() << "\n";
        return kExitInvalid;
    }
    std::cout << to_hex(outcome.tree.tree().tx_id(std::get<tree::TreeTx>(resolved))) << "\n";
    return kExitValid;
}

int cmd_gen(std::uint64_t seed, std::size_t n_txs, const std::vector<std::string>& fault_args,
            const ScheduleOverrides& overrides)
{
    gen::GenConfig config;
    config.seed = seed;
    config.n_txs = n_txs;
    overrides.apply(config.params);
    for (const std::string& arg : fault_args) {
        auto fault = gen::parse_fault(arg);
        if (!fault) {
            std::cerr << "error: bad fault \"" << arg
                      << "\" (expected Kind@Line, e.g. BadSignature@5)\n";
            return kExitMalformed;
        }
        config.faults.push_back(*fault);
    }
    try {
        std::cout << gen::generate_chain(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitValid;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UTXO chain validation kernel"};
    app.require_subcommand(1);

    std::string path;
    std::string which;
    std::string context_path;
    bool human = false;
    std::uint64_t seed = 0;
    std::size_t n_txs = 20;
    std::vector<std::string> fault_args;
    ScheduleOverrides overrides;

    CLI::App* validate = app.add_subcommand("validate", "Validate a chain file");
    validate->add_option("file", path, "Chain file")->required();
    validate->add_flag("--human", human, "Human-readable report instead of JSON");
    validate->add_flag("--json", "JSON report (default)");
    add_schedule_flags(validate, overrides);

    CLI::App* report = app.add_subcommand("report", "Report on a valid chain file");
    report->add_option("file", path, "Chain file")->required();
    report->add_option("view", which, "What to report")
        ->required()
        ->check(CLI::IsMember({"utxo", "balances", "fees"}));
    add_schedule_flags(report, overrides);

    CLI::App* txid = app.add_subcommand("txid", "Print the id of a single transaction");
    txid->add_option("file", path, "File holding one transaction line")->required();
    txid->add_option("--context", context_path, "Chain file that resolves a standard tx");
    add_schedule_flags(txid, overrides);

    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a deterministic test chain");
    gen_cmd->add_option("--seed", seed, "Generator seed");
    gen_cmd->add_option("--txs", n_txs, "Number of transactions");
    gen_cmd->add_option("--fault", fault_args, "Inject a fault, Kind@Line (repeatable)");
    add_schedule_flags(gen_cmd, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitMalformed;
    }

    if (validate->parsed())
        return cmd_validate(path, overrides, human);
    if (report->parsed())
        return cmd_report(path, which, overrides);
    if (txid->parsed())
        return cmd_txid(path, context_path, overrides);
    return cmd_gen(seed, n_txs, fault_args, overrides);
}
