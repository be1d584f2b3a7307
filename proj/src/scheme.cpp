#include "chainkit/scheme.hpp"

#include <algorithm>

#include "chainkit/sha256.hpp"

namespace chainkit {

namespace {

// Domain separator prepended to a public key before hashing it to an address.
constexpr std::uint8_t kAddrLabel = 0xAD;

Msg sig_tag_msg(const PublicKey& pk, const Msg& m)
{
    return Msg::pair(Msg::nat_of_bytes(pk), m);
}

} // namespace

Digest ToyScheme::hash_msg(const Msg& m) const
{
    return sha256d(encode_msg(m));
}

Address ToyScheme::pubkey_to_address(const PublicKey& pk) const
{
    std::vector<std::uint8_t> labeled;
    labeled.reserve(pk.size() + 1);
    labeled.push_back(kAddrLabel);
    labeled.insert(labeled.end(), pk.begin(), pk.end());
    Digest d = hash_msg(Msg::nat_of_bytes(labeled));
    Address a;
    std::copy_n(d.bytes.begin(), a.bytes.size(), a.bytes.begin());
    return a;
}

bool ToyScheme::verify(const Msg& m, const PublicKey& pk, const Signature& sig) const
{
    Digest tag = hash_msg(sig_tag_msg(pk, m));
    return sig.size() == tag.bytes.size() &&
           std::equal(sig.begin(), sig.end(), tag.bytes.begin());
}

PublicKey ToyScheme::keygen(std::uint64_t seed) const
{
    // splitmix64 finalizer; any fixed 64-bit mixing works here.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    PublicKey pk(8);
    for (int i = 0; i < 8; ++i)
        pk[i] = static_cast<std::uint8_t>(z >> (8 * (7 - i)));
    return pk;
}

Signature ToyScheme::sign(const Msg& m, const PublicKey& secret) const
{
    Digest tag = hash_msg(sig_tag_msg(secret, m));
    return Signature(tag.bytes.begin(), tag.bytes.end());
}

const ToyScheme& ToyScheme::instance()
{
    static const ToyScheme scheme;
    return scheme;
}

} // namespace chainkit
