#include <doctest.h>

#include <set>

#include "chainkit/scheme.hpp"
#include "chainkit/sha256.hpp"
#include "helpers.hpp"

using namespace chainkit;

namespace {

std::vector<std::uint8_t> ascii(const char* s)
{
    std::vector<std::uint8_t> out;
    for (const char* p = s; *p; ++p)
        out.push_back(static_cast<std::uint8_t>(*p));
    return out;
}

} // namespace

TEST_CASE("sha256 matches the FIPS 180-4 test vectors")
{
    CHECK(to_hex(sha256(ascii(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256(ascii("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(ascii("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // 64-byte input exercises the two-block padding path.
    std::vector<std::uint8_t> block64(64, 0x61);
    CHECK(to_hex(sha256(block64)) ==
          "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
}

TEST_CASE("hash_msg is double sha256 of the canonical encoding")
{
    const ToyScheme& scheme = ToyScheme::instance();
    // Frozen with an independent implementation: sha256d([0x00, 0x00]).
    CHECK(to_hex(scheme.hash_msg(Msg::nat(0))) ==
          "407feb4a4b8303baf4f84e29a209e0dcfd62e81f88c8edb7675c5a95d90e5c90");
    CHECK(scheme.hash_msg(Msg::nat(0)) == scheme.hash_msg(Msg::nat(0)));
}

TEST_CASE("hash_msg sees no collisions on a large random corpus")
{
    const ToyScheme& scheme = ToyScheme::instance();
    testkit::Rng rng(7);
    std::set<std::vector<std::uint8_t>> encodings;
    std::set<Digest> digests;
    for (int i = 0; i < 100'000; ++i) {
        Msg m = testkit::random_msg(rng);
        if (encodings.insert(encode_msg(m)).second)
            digests.insert(scheme.hash_msg(m));
    }
    CHECK(digests.size() == encodings.size());
}

TEST_CASE("pubkey_to_address is deterministic and matches the reference")
{
    const ToyScheme& scheme = ToyScheme::instance();
    PublicKey pk = *from_hex("0102030405060708");
    Address a1 = scheme.pubkey_to_address(pk);
    Address a2 = scheme.pubkey_to_address(pk);
    CHECK(a1 == a2);
    // Frozen with an independent implementation.
    CHECK(to_hex(a1) == "f281e776f6fd670f6cf00cd03232d8c044410bcc");
}

TEST_CASE("distinct keys map to distinct addresses at desk scale")
{
    const ToyScheme& scheme = ToyScheme::instance();
    std::set<Address> addrs;
    std::set<PublicKey> keys;
    for (std::uint64_t seed = 0; seed < 10'000; ++seed) {
        PublicKey pk = scheme.keygen(seed);
        if (keys.insert(pk).second)
            addrs.insert(scheme.pubkey_to_address(pk));
    }
    CHECK(addrs.size() == keys.size());
}

TEST_CASE("toy scheme verifies its own signatures and nothing else")
{
    const ToyScheme& scheme = ToyScheme::instance();
    testkit::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        PublicKey pk = scheme.keygen(rng.next());
        Msg m = testkit::random_msg(rng);
        Signature sig = scheme.sign(m, pk);
        CHECK(scheme.verify(m, pk, sig));

        // Any change to the message invalidates the signature.
        Msg other = Msg::pair(m, Msg::nat(1));
        CHECK_FALSE(scheme.verify(other, pk, sig));

        // Including the smallest one: a single flipped bit in a leaf.
        std::uint64_t leaf = rng.next();
        Signature leaf_sig = scheme.sign(Msg::nat(leaf), pk);
        CHECK(scheme.verify(Msg::nat(leaf), pk, leaf_sig));
        CHECK_FALSE(scheme.verify(Msg::nat(leaf ^ 1), pk, leaf_sig));

        // Another keypair's view rejects too.
        PublicKey pk2 = scheme.keygen(rng.next());
        if (pk2 != pk)
            CHECK_FALSE(scheme.verify(m, pk2, sig));

        Signature tampered = sig;
        tampered[i % tampered.size()] ^= 0x01;
        CHECK_FALSE(scheme.verify(m, pk, tampered));
    }
}

TEST_CASE("toy signature over a fixed message matches the reference")
{
    const ToyScheme& scheme = ToyScheme::instance();
    PublicKey pk = *from_hex("0102030405060708");
    Signature sig = scheme.sign(Msg::nat(7), pk);
    CHECK(to_hex(sig) == "2158595d51fd9e4508b426329535cbc66d3bca55a68bdffb327f72fe724576c2");
}
