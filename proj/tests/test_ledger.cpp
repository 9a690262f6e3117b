#include <gtest/gtest.h>

#include <sstream>

#include "flows.hpp"

namespace omap {
namespace {

using testing::kGreen;
using testing::kRed;
using testing::World;

class LedgerTest : public ::testing::Test {
protected:
    World w{16, 1234};

    BuildResult pay(const Note& n, const Party& from, const Party& to, Amount v) {
        return build_self_split(w.ledger, {InputSpend{n, from.a_sk}, make_dummy_input(w.rng)},
                                from, {n.color1, v}, w.rng);
    }
};

TEST_F(LedgerTest, EveryCaseSharesOneShape) {
    const auto txs = testing::transactions_for_every_case(w);
    ASSERT_EQ(txs.size(), 6u);
    for (const auto& [c, r] : txs) {
        SCOPED_TRACE(std::string(case_name(c)));
        const TxBytes bytes = serialize_tx(r.tx);
        EXPECT_EQ(bytes.size(), 898u);
        EXPECT_EQ(r.tx.proof.tag.size(), 32u);
        EXPECT_EQ(deserialize_tx(bytes), r.tx);
        EXPECT_EQ(r.tx.v_pub_old, Asset{});
        EXPECT_EQ(r.tx.v_pub_new, Asset{});
    }
    for (const auto& v : w.auditor.violations(w.ledger)) ADD_FAILURE() << v;
}

TEST_F(LedgerTest, SerializationRejectsWrongLength) {
    const Note n = w.mint(w.alice, kGreen, 3);
    const auto r = pay(n, w.alice, w.alice, 1);
    const TxBytes b = serialize_tx(r.tx);
    EXPECT_THROW(deserialize_tx(std::span(b.data(), b.size() - 1)), TransactionError);
    Bytes longer(b.begin(), b.end());
    longer.push_back(0);
    EXPECT_THROW(deserialize_tx(longer), TransactionError);
}

TEST_F(LedgerTest, VerdictsAndCheckOrder) {
    const Note n = w.mint(w.alice, kGreen, 8);
    const auto r = pay(n, w.alice, w.alice, 3);
    const auto size_before = w.ledger.tree().size();

    auto expect = [&](auto edit, Verdict v) {
        JoinSplitTransaction tx = r.tx;
        edit(tx);
        EXPECT_EQ(w.ledger.check(tx), v);
        EXPECT_EQ(w.ledger.verify_and_append(tx), v);
        EXPECT_EQ(w.ledger.tree().size(), size_before);
    };
    expect([](auto& tx) { tx.nf_old_2 = tx.nf_old_1; }, Verdict::DuplicateNullifier);
    expect([&](auto& tx) { tx.rt = w.rng.next_field_digest(); }, Verdict::UnknownRoot);
    expect([&](auto& tx) { tx.pk_sig[0] ^= 1; }, Verdict::HsigMismatch);
    expect([](auto& tx) { tx.proof.tag[5] ^= 1; }, Verdict::InvalidProof);
    expect([](auto& tx) { tx.cm_new_1.bytes[31] ^= 1; }, Verdict::InvalidProof);
    expect([](auto& tx) { tx.delta[0] ^= 1; }, Verdict::InvalidSignature);
    expect([](auto& tx) { tx.memo[0] ^= 1; }, Verdict::InvalidSignature);
    expect([](auto& tx) { tx.enc_note_1[0] ^= 1; }, Verdict::InvalidSignature);
    expect(
        [](auto& tx) {
            tx.proof.tag[5] ^= 1;
            tx.delta[0] ^= 1;
        },
        Verdict::InvalidProof);

    EXPECT_EQ(w.ledger.verify_and_append(r.tx), Verdict::Accept);
    EXPECT_EQ(w.ledger.tree().size(), size_before + 4);
    // replay: nullifiers first, even though the root is still known
    EXPECT_EQ(w.ledger.verify_and_append(r.tx), Verdict::DuplicateNullifier);
}

TEST_F(LedgerTest, EverySingleByteMutationFails) {
    const Note n = w.mint(w.alice, kGreen, 8);
    const auto r = pay(n, w.alice, w.alice, 3);
    const TxBytes good = serialize_tx(r.tx);
    for (std::size_t i = 0; i < good.size(); ++i) {
        TxBytes bad = good;
        bad[i] ^= static_cast<std::uint8_t>(1u << (i % 8));
        ASSERT_NE(w.ledger.check(deserialize_tx(bad)), Verdict::Accept) << "byte " << i;
    }
    EXPECT_EQ(w.ledger.check(deserialize_tx(good)), Verdict::Accept);
}

TEST_F(LedgerTest, ProofIsBoundToBlockHeight) {
    const Note n = w.mint(w.alice, kGreen, 8);
    const auto r = pay(n, w.alice, w.alice, 3);
    w.ledger.advance_block();
    EXPECT_EQ(w.ledger.verify_and_append(r.tx), Verdict::InvalidProof);
}

TEST_F(LedgerTest, OldRootsStayValid) {
    const Note n = w.mint(w.alice, kGreen, 8);
    const auto r = pay(n, w.alice, w.alice, 3);
    w.mint(w.bob, kRed, 1);
    EXPECT_NE(w.ledger.tree().root(), r.tx.rt);
    EXPECT_EQ(w.ledger.verify_and_append(r.tx), Verdict::Accept);
}

TEST_F(LedgerTest, Mints) {
    auto [tx, note] = build_mint(w.alice.addr, kGreen, 12, w.rng);
    MintTransaction bad = tx;
    bad.value = 13;
    EXPECT_EQ(w.ledger.apply_mint(bad), MintVerdict::BadCommitment);
    bad = tx;
    bad.color = 0;
    EXPECT_EQ(w.ledger.apply_mint(bad), MintVerdict::ReservedColor);
    EXPECT_THROW(build_mint(w.alice.addr, 0, 1, w.rng), TransactionError);
    EXPECT_EQ(w.ledger.apply_mint(tx), MintVerdict::Accept);
    EXPECT_EQ(w.ledger.supply().at(kGreen).minted, 12u);
    EXPECT_EQ(w.ledger.tree().leaf_at(0), note.cm);
}

TEST_F(LedgerTest, ShieldingFlowsAreAccounted) {
    const Note n = w.mint(w.alice, kGreen, 10);
    BuildRequest req;
    req.inputs = {InputSpend{n, w.alice.a_sk}, make_dummy_input(w.rng)};
    req.outputs = {OutputSpec::plain(w.alice.addr, {kGreen, 9}), OutputSpec::dummy(w.alice.addr)};
    req.v_pub_old = {kGreen, 4};
    req.v_pub_new = {kGreen, 5};
    const auto r = build_joinsplit(w.ledger.params(), w.ledger.tree(), w.ledger.block_n(), req, w.rng);
    w.accept(r);
    const Supply s = w.ledger.supply().at(kGreen);
    EXPECT_EQ(s.shielded_in, 4u);
    EXPECT_EQ(s.shielded_out, 5u);
    EXPECT_TRUE(w.auditor.violations(w.ledger).empty());
    EXPECT_EQ(w.auditor.holdings("alice", w.ledger).at(kGreen), 9u);

    BuildRequest unbalanced = req;
    unbalanced.inputs = {InputSpend{r.n_new_1, w.alice.a_sk}, make_dummy_input(w.rng)};
    unbalanced.v_pub_new = {kGreen, 1};
    EXPECT_THROW(build_joinsplit(w.ledger.params(), w.ledger.tree(), w.ledger.block_n(),
                                 unbalanced, w.rng),
                 r1cs::ProvingError);
}

TEST_F(LedgerTest, ScanningAndDump) {
    const Note n = w.mint(w.alice, kGreen, 10);
    auto recv = w.ledger.scan_receive(w.alice.addr, w.alice.a_sk);
    ASSERT_EQ(recv.size(), 1u);
    EXPECT_EQ(recv[0].note, n);
    EXPECT_TRUE(recv[0].spendable);
    EXPECT_TRUE(w.ledger.scan_receive(w.bob.addr, w.bob.a_sk).empty());

    const auto r = pay(n, w.alice, w.alice, 4);
    w.accept(r);
    recv = w.ledger.scan_receive(w.alice.addr, w.alice.a_sk);
    ASSERT_EQ(recv.size(), 3u);
    EXPECT_FALSE(recv[0].spendable);
    EXPECT_TRUE(recv[1].spendable);

    const auto hit = w.ledger.scan_nullifier(r.tx.nf_old_1);
    ASSERT_TRUE(hit);
    EXPECT_TRUE(verify_path(w.ledger.tree().root(), r.tx.nf_old_1, hit->second));
    EXPECT_FALSE(w.ledger.scan_nullifier(w.rng.next_field_digest()));

    std::ostringstream os;
    w.ledger.dump(os);
    const std::string d = os.str();
    EXPECT_EQ(d.rfind("cm 0 " + n.cm.hex() + "\n", 0), 0u);
    EXPECT_NE(d.find("nf 3 " + r.tx.nf_old_1.hex()), std::string::npos);
    EXPECT_THROW(w.ledger.advance_block(0), std::invalid_argument);
}

}  // namespace
}  // namespace omap
