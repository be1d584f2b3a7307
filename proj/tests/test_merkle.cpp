#include <doctest.h>

#include "chainkit/merkle.hpp"
#include "tree_helpers.hpp"

using namespace chainkit;
using namespace chainkit::merkle;
using namespace chainkit::tree;

namespace {

Context test_ctx(Time maturation = 0)
{
    Context ctx;
    ctx.params.schedule = RewardSchedule{Amount{1'000}, 50, 100'000};
    ctx.params.maturation_window = maturation;
    return ctx;
}

CorrectTree must_extend(const CorrectTree& ct, const TreeTx& tx)
{
    auto result = ct.extend(tx);
    REQUIRE(std::holds_alternative<CorrectTree>(result));
    return std::get<CorrectTree>(std::move(result));
}

CorrectTree must_apply(const CorrectTree& ct, const MerkleTx& m)
{
    auto result = apply_merkle(ct, m);
    if (const auto* v = std::get_if<Violation>(&result))
        FAIL("apply_merkle rejected: ", v->describe());
    return std::get<CorrectTree>(std::move(result));
}

} // namespace

TEST_CASE("to_merkle maps coinbases structurally and inputs to outpoints")
{
    testkit::TreeBuilder b(test_ctx(), 40);
    CoinbaseTx cb{0, {{Amount{1'000}, b.fresh_address()}}};
    MerkleTx wire = to_merkle(b.tree(), TreeTx{cb});
    REQUIRE(std::holds_alternative<MerkleCoinbase>(wire));
    CHECK(std::get<MerkleCoinbase>(wire).time == 0);
    CHECK(std::get<MerkleCoinbase>(wire).outputs == cb.outputs);

    b.apply(TreeTx{cb});
    NormalTx tx = b.spend({0}, Amount{3});
    MerkleTx std_wire = to_merkle(b.tree(), TreeTx{tx});
    REQUIRE(std::holds_alternative<MerkleStandard>(std_wire));
    const auto& std_tx = std::get<MerkleStandard>(std_wire);
    REQUIRE(std_tx.inputs.size() == 1);
    CHECK(std_tx.inputs[0].txid == b.tree().txid_at(0));
    CHECK(std_tx.inputs[0].output_nr == 0);
    CHECK(std_tx.inputs[0].pubkey == tx.inputs.steps[0].note.pubkey);
    CHECK(std_tx.outputs == tx.outputs);
}

TEST_CASE("corresponds is a round trip check that rejects mixed variants")
{
    testkit::TreeBuilder b(test_ctx(), 41);
    b.apply(TreeTx{b.next_coinbase(2)});
    NormalTx tx = b.spend({0, 1}, Amount{9});

    MerkleTx wire = to_merkle(b.tree(), TreeTx{tx});
    CHECK(corresponds(wire, b.tree(), TreeTx{tx}));

    CoinbaseTx cb = b.next_coinbase();
    CHECK_FALSE(corresponds(wire, b.tree(), TreeTx{cb}));
    CHECK_FALSE(corresponds(to_merkle(b.tree(), TreeTx{cb}), b.tree(), TreeTx{tx}));

    MerkleTx perturbed = wire;
    std::get<MerkleStandard>(perturbed).outputs[0].amount.value += 1;
    CHECK_FALSE(corresponds(perturbed, b.tree(), TreeTx{tx}));
}

TEST_CASE("resolve rebuilds the selection and round-trips")
{
    testkit::TreeBuilder b(test_ctx(), 42);
    b.apply(TreeTx{b.next_coinbase(2)});
    b.apply(TreeTx{b.spend({0}, Amount{2})});
    NormalTx tx = b.spend({1, 0}, Amount{4});
    MerkleTx wire = to_merkle(b.tree(), TreeTx{tx});

    auto ct = CorrectTree::genesis(test_ctx());
    for (const TreeTx& prev : b.txs())
        ct = must_extend(ct, prev);

    auto resolved = resolve(ct, wire);
    REQUIRE(std::holds_alternative<TreeTx>(resolved));
    CHECK(std::get<TreeTx>(resolved) == TreeTx{tx});
    CHECK(corresponds(wire, ct.tree(), std::get<TreeTx>(resolved)));
}

TEST_CASE("resolve reports unknown, duplicate and spent outpoints")
{
    testkit::TreeBuilder b(test_ctx(), 43);
    b.apply(TreeTx{b.next_coinbase()});
    auto ct = CorrectTree::genesis(test_ctx());
    ct = must_extend(ct, b.txs()[0]);

    MerkleStandard ghost;
    ghost.outputs = {{Amount{1}, b.fresh_address()}};
    ghost.inputs = {MerkleInput{Digest{}, 0, {}, {}}};
    auto unknown = resolve(ct, MerkleTx{ghost});
    REQUIRE(std::holds_alternative<Violation>(unknown));
    CHECK(std::get<Violation>(unknown).kind == ViolationKind::unknown_outpoint);
    CHECK(std::get<Violation>(unknown).input_index == 0);

    // The same outpoint listed twice in one transaction.
    NormalTx tx = b.spend({0}, Amount{0});
    MerkleTx wire = to_merkle(b.tree(), TreeTx{tx});
    MerkleStandard doubled = std::get<MerkleStandard>(wire);
    doubled.inputs.push_back(doubled.inputs[0]);
    auto dup = resolve(ct, MerkleTx{doubled});
    REQUIRE(std::holds_alternative<Violation>(dup));
    CHECK(std::get<Violation>(dup).kind == ViolationKind::duplicate_outpoint);
    CHECK(std::get<Violation>(dup).input_index == 1);

    // Once spent, the outpoint no longer resolves.
    b.apply(TreeTx{tx});
    ct = must_extend(ct, TreeTx{tx});
    auto spent = resolve(ct, wire);
    REQUIRE(std::holds_alternative<Violation>(spent));
    CHECK(std::get<Violation>(spent).kind == ViolationKind::unknown_outpoint);
}

TEST_CASE("apply_merkle validates end to end")
{
    auto ct = CorrectTree::genesis(test_ctx(2));
    testkit::TreeBuilder b(test_ctx(2), 44);

    // Valid coinbase on genesis.
    CoinbaseTx cb = b.next_coinbase();
    b.apply(TreeTx{cb});
    ct = must_apply(ct, MerkleTx{MerkleCoinbase{cb.time, cb.outputs}});
    CHECK(ct.tree().size() == 1);

    // Premature spend arrives over the wire and is rejected by maturation.
    NormalTx early = b.spend({0}, Amount{0});
    auto premature = apply_merkle(ct, to_merkle(b.tree(), TreeTx{early}));
    REQUIRE(std::holds_alternative<Violation>(premature));
    CHECK(std::get<Violation>(premature).kind == ViolationKind::immature_input);

    // Mine until mature, then the spend lands and cannot be replayed.
    CoinbaseTx cb1 = b.next_coinbase();
    b.apply(TreeTx{cb1});
    ct = must_apply(ct, MerkleTx{MerkleCoinbase{cb1.time, cb1.outputs}});

    NormalTx spend = b.spend({0}, Amount{1});
    MerkleTx wire = to_merkle(b.tree(), TreeTx{spend});
    ct = must_apply(ct, wire);
    auto replay = apply_merkle(ct, wire);
    REQUIRE(std::holds_alternative<Violation>(replay));
    CHECK(std::get<Violation>(replay).kind == ViolationKind::unknown_outpoint);
}

// Under a colliding hash, two UTXO entries can share an outpoint; resolve
// must surface that instead of picking one.
TEST_CASE("resolve reports AmbiguousOutpoint under txid collisions")
{
    testkit::TimeBlindScheme blind;
    Context ctx;
    ctx.scheme = &blind;
    ctx.params.schedule = RewardSchedule{Amount{1'000}, 50, 100'000};
    ctx.params.maturation_window = 0;

    Address pay = blind.pubkey_to_address(ToyScheme::instance().keygen(77));
    auto ct = CorrectTree::genesis(ctx);
    for (Time h = 0; h < 2; ++h) {
        auto next = ct.extend(TreeTx{CoinbaseTx{h, {{Amount{1'000}, pay}}}});
        REQUIRE(std::holds_alternative<CorrectTree>(next));
        ct = std::get<CorrectTree>(std::move(next));
    }
    REQUIRE(ct.tree().txid_at(0) == ct.tree().txid_at(1)); // the collision

    MerkleStandard tx;
    tx.inputs = {MerkleInput{ct.tree().txid_at(0), 0, {}, {}}};
    tx.outputs = {{Amount{1'000}, pay}};
    auto resolved = resolve(ct, MerkleTx{tx});
    REQUIRE(std::holds_alternative<Violation>(resolved));
    CHECK(std::get<Violation>(resolved).kind == ViolationKind::ambiguous_outpoint);
}

// Round trip over whole random chains: every transaction's wire form
// resolves back to it at its own prefix.
TEST_CASE("resolve after to_merkle is the identity on generated chains")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Context ctx = test_ctx(2);
        testkit::TreeBuilder b(ctx, 4'000 + seed);
        for (int i = 0; i < 30; ++i)
            b.random_step();

        auto ct = CorrectTree::genesis(ctx);
        for (const TreeTx& tx : b.txs()) {
            MerkleTx wire = to_merkle(ct.tree(), tx);
            auto resolved = resolve(ct, wire);
            REQUIRE(std::holds_alternative<TreeTx>(resolved));
            CHECK(std::get<TreeTx>(resolved) == tx);
            CHECK(corresponds(wire, ct.tree(), std::get<TreeTx>(resolved)));
            ct = must_extend(ct, tx);
        }
    }
}
