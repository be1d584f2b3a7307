#pragma once

#include <cstdint>
#include <string_view>

#include "chainkit/bytes.hpp"
#include "chainkit/msg.hpp"

namespace chainkit {

// Hashing, key-to-address mapping and signature verification, behind one
// interface so tests can substitute degenerate schemes. hash_msg and
// pubkey_to_address must be deterministic.
class CryptoScheme {
public:
    virtual ~CryptoScheme() = default;

    virtual std::string_view name() const = 0;
    virtual Digest hash_msg(const Msg& m) const = 0;
    virtual Address pubkey_to_address(const PublicKey& pk) const = 0;
    virtual bool verify(const Msg& m, const PublicKey& pk, const Signature& sig) const = 0;

    // Declared wire sizes; zero means variable length.
    virtual std::size_t pubkey_size() const = 0;
    virtual std::size_t signature_size() const = 0;
};

// Deliberately insecure scheme for tests and generated fixtures: the public
// key IS the secret, and a signature is just the hash of (key, message).
// Hashing is double SHA-256 over the canonical message encoding.
class ToyScheme final : public CryptoScheme {
public:
    std::string_view name() const override { return "toy-v1"; }
    Digest hash_msg(const Msg& m) const override;
    Address pubkey_to_address(const PublicKey& pk) const override;
    bool verify(const Msg& m, const PublicKey& pk, const Signature& sig) const override;

    std::size_t pubkey_size() const override { return 8; }
    std::size_t signature_size() const override { return 32; }

    // Test-only capabilities.
    PublicKey keygen(std::uint64_t seed) const;
    Signature sign(const Msg& m, const PublicKey& secret) const;

    static const ToyScheme& instance();
};

} // namespace chainkit
