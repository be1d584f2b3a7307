#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "chainkit/merkle.hpp"
#include "chainkit/params.hpp"

// Chain files are JSON lines: a header record pinning format version,
// reward schedule, maturation window and crypto scheme, followed by one
// wire-form transaction per line.
namespace chainkit::chainfile {

inline constexpr int kFormatVersion = 1;

struct ChainHeader {
    int format = kFormatVersion;
    ChainParams params;
    std::string scheme = "toy-v1";

    friend bool operator==(const ChainHeader&, const ChainHeader&) = default;
};

// Line of a transaction: the header is line 1, the first transaction line 2.
struct NumberedTx {
    std::size_t line;
    merkle::MerkleTx tx;
};

struct ParsedChain {
    ChainHeader header;
    std::vector<NumberedTx> txs;
};

struct ParseError {
    std::size_t line;
    std::string message;
};

std::variant<ParsedChain, ParseError> parse_chain(const std::string& contents);

// A single transaction line without a header, for the txid command.
std::variant<merkle::MerkleTx, ParseError> parse_tx_line(const std::string& line,
                                                         const CryptoScheme& scheme,
                                                         std::size_t line_number = 1);

std::string header_line(const ChainHeader& header);
std::string tx_line(const merkle::MerkleTx& tx);

// Resolves the header's scheme name; nullptr when unknown.
const CryptoScheme* scheme_by_name(const std::string& name);

struct Rejection {
    std::size_t line;
    Violation violation;
};

struct ValidationReport {
    bool accepted = true;
    std::optional<Rejection> rejection;
    std::size_t tx_count = 0;       // transactions accepted
    std::size_t coinbase_count = 0;
    Amount rewards_minted{0};       // sum of block rewards over coinbase heights
    Amount pending_fees{0};
    std::size_t utxo_count = 0;
    Amount utxo_total{0};
    Balances balances;
    bool conservation_holds = false; // utxo_total + pending_fees == rewards_minted
};

struct ValidationOutcome {
    ValidationReport report;
    tree::CorrectTree tree; // state after the last accepted transaction
};

// Folds apply_merkle over the transactions from genesis, stopping at the
// first rejection.
ValidationOutcome validate_chain(const Context& ctx, const std::vector<NumberedTx>& txs);

std::string report_json(const ValidationReport& report);
std::string report_human(const ValidationReport& report);

std::string utxo_report_json(const tree::TxTree& tr);
std::string balances_report_json(const Balances& balances);
std::string fees_report_json(const tree::TxTree& tr);

} // namespace chainkit::chainfile
