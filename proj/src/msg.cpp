#include "chainkit/msg.hpp"

namespace chainkit {

Nat::Nat(std::uint64_t v)
{
    while (v != 0) {
        be_.insert(be_.begin(), static_cast<std::uint8_t>(v & 0xFF));
        v >>= 8;
    }
}

Nat Nat::from_bytes_be(std::span<const std::uint8_t> bytes)
{
    std::size_t first = 0;
    while (first < bytes.size() && bytes[first] == 0)
        ++first;
    Nat n;
    n.be_.assign(bytes.begin() + static_cast<std::ptrdiff_t>(first), bytes.end());
    return n;
}

void Nat::append_leb128(std::vector<std::uint8_t>& out) const
{
    if (be_.empty()) {
        out.push_back(0x00);
        return;
    }
    // Bit i (LSB order) of the big-endian representation.
    auto bit = [this](std::size_t i) -> unsigned {
        std::size_t byte = be_.size() - 1 - i / 8;
        return (be_[byte] >> (i % 8)) & 1u;
    };
    std::size_t total_bits = be_.size() * 8;
    unsigned lead = be_.front();
    while ((lead & 0x80) == 0) {
        lead <<= 1;
        --total_bits;
    }
    std::size_t groups = (total_bits + 6) / 7;
    for (std::size_t g = 0; g < groups; ++g) {
        std::uint8_t chunk = 0;
        for (std::size_t b = 0; b < 7; ++b) {
            std::size_t i = g * 7 + b;
            if (i < total_bits)
                chunk |= static_cast<std::uint8_t>(bit(i) << b);
        }
        if (g + 1 < groups)
            chunk |= 0x80;
        out.push_back(chunk);
    }
}

void append_leb128_u64(std::uint64_t v, std::vector<std::uint8_t>& out)
{
    do {
        std::uint8_t chunk = v & 0x7F;
        v >>= 7;
        if (v != 0)
            chunk |= 0x80;
        out.push_back(chunk);
    } while (v != 0);
}

Msg Msg::pair(Msg left, Msg right)
{
    std::vector<Msg> kids;
    kids.reserve(2);
    kids.push_back(std::move(left));
    kids.push_back(std::move(right));
    return Msg(Kind::pair, std::move(kids));
}

Msg Msg::list(std::vector<Msg> items)
{
    return Msg(Kind::list, std::move(items));
}

void append_encoded(const Msg& m, std::vector<std::uint8_t>& out)
{
    switch (m.kind()) {
    case Msg::Kind::nat:
        out.push_back(0x00);
        m.as_nat().append_leb128(out);
        break;
    case Msg::Kind::pair:
        out.push_back(0x01);
        append_encoded(m.left(), out);
        append_encoded(m.right(), out);
        break;
    case Msg::Kind::list:
        out.push_back(0x02);
        append_leb128_u64(m.items().size(), out);
        for (const Msg& item : m.items())
            append_encoded(item, out);
        break;
    }
}

std::vector<std::uint8_t> encode_msg(const Msg& m)
{
    std::vector<std::uint8_t> out;
    append_encoded(m, out);
    return out;
}

} // namespace chainkit
