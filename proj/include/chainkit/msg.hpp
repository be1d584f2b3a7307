#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chainkit/amount.hpp"
#include "chainkit/bytes.hpp"

namespace chainkit {

// Unbounded natural number, stored as canonical big-endian bytes
// (no leading zero byte; empty means 0). Digests, keys, signatures and
// addresses enter messages through this embedding.
class Nat {
public:
    Nat() = default;
    explicit Nat(std::uint64_t v);

    static Nat from_bytes_be(std::span<const std::uint8_t> bytes);

    const std::vector<std::uint8_t>& bytes_be() const { return be_; }
    bool is_zero() const { return be_.empty(); }

    // Unsigned LEB128, minimal form.
    void append_leb128(std::vector<std::uint8_t>& out) const;

    friend bool operator==(const Nat&, const Nat&) = default;

private:
    std::vector<std::uint8_t> be_;
};

// Finite message tree: naturals, pairs, and lists. Everything that is
// hashed or signed is first expressed as one of these.
class Msg {
public:
    enum class Kind : std::uint8_t { nat, pair, list };

    static Msg nat(std::uint64_t v) { return Msg(Nat(v)); }
    static Msg nat(Nat n) { return Msg(std::move(n)); }
    static Msg nat_of_bytes(std::span<const std::uint8_t> bytes)
    {
        return Msg(Nat::from_bytes_be(bytes));
    }
    static Msg pair(Msg left, Msg right);
    static Msg list(std::vector<Msg> items);

    Kind kind() const { return kind_; }
    const Nat& as_nat() const { return nat_; }
    const Msg& left() const { return kids_[0]; }
    const Msg& right() const { return kids_[1]; }
    const std::vector<Msg>& items() const { return kids_; }

    friend bool operator==(const Msg&, const Msg&) = default;

private:
    explicit Msg(Nat n) : kind_(Kind::nat), nat_(std::move(n)) {}
    Msg(Kind k, std::vector<Msg> kids) : kind_(k), kids_(std::move(kids)) {}

    Kind kind_ = Kind::nat;
    Nat nat_;
    std::vector<Msg> kids_; // pair: exactly two; list: any length
};

// Canonical prefix-free encoding: 0x00 + leb128(n) for naturals,
// 0x01 + enc(left) + enc(right) for pairs,
// 0x02 + leb128(count) + item encodings for lists.
std::vector<std::uint8_t> encode_msg(const Msg& m);
void append_encoded(const Msg& m, std::vector<std::uint8_t>& out);

void append_leb128_u64(std::uint64_t v, std::vector<std::uint8_t>& out);

} // namespace chainkit
