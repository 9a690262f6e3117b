#include <gtest/gtest.h>

#include "attacks.hpp"
#include "flows.hpp"

namespace omap {
namespace {

using testing::kGreen;
using testing::kRed;
using testing::World;

constexpr Color kYellow = 4;

class ExchangeTest : public ::testing::Test {
protected:
    World w{16, 77};
    Bytes secret = Bytes{'s', 'e', 'c', 'r', 'e', 't'};

    ExchangeSession initiator(Asset give, Asset ask, Height bt) {
        return ExchangeSession(SessionRole::Initiator, give, ask, bt, secret);
    }
    ExchangeSession counterparty(Asset give, Asset ask, Height bt) {
        return ExchangeSession(SessionRole::Counterparty, give, ask, bt, secret);
    }
    void offer(ExchangeSession& x, std::vector<Note> funding) {
        auto rs = x.initiate(w.ledger, w.alice, funding, w.rng);
        w.auditor.add_owner("escrow", *x.shared_key());
        w.observe(rs);
    }
    Amount held(const std::string& who, Color c) {
        const auto h = w.auditor.holdings(who, w.ledger);
        auto it = h.find(c);
        return it == h.end() ? 0 : it->second;
    }
    void expect_clean() {
        for (const auto& v : w.auditor.violations(w.ledger)) ADD_FAILURE() << v;
    }
};

TEST_F(ExchangeTest, OfferFromTwoFundingNotes) {
    std::vector<Note> f = {w.mint(w.alice, kGreen, 3), w.mint(w.alice, kGreen, 2)};
    auto x = initiator({kGreen, 5}, {kRed, 7}, 10);
    auto rs = x.initiate(w.ledger, w.alice, f, w.rng);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0].case_id, CaseId::ExchangeInit);
    EXPECT_EQ(x.state(), SessionState::Offered);
    const Note& p = *x.primary_note();
    const Note& s = *x.sibling_note();
    EXPECT_EQ(p.s, 0);
    EXPECT_EQ(p.asset1(), (Asset{kGreen, 5}));
    EXPECT_EQ((Asset{p.color2, p.v2}), (Asset{kRed, 7}));
    EXPECT_EQ(s.s, 1);
    EXPECT_EQ(s.asset1(), (Asset{kRed, 7}));
    EXPECT_EQ(s.v2, 0u);
    EXPECT_TRUE(is_valid_pair({p, s}));
    EXPECT_EQ(p.a_pk, prf_addr(*x.shared_key()));
    EXPECT_EQ(s.a_pk, w.alice.addr.a_pk);
    EXPECT_EQ(*x.primary_nf_expected(), prf_nf(*x.shared_key(), p.rho));

    // the ciphertexts open to exactly this pair for their owners
    const auto shared_addr = derive_address(*x.shared_key());
    EXPECT_EQ(open_note(shared_addr, rs[0].tx.enc_note_1, rs[0].tx.cm_new_1), p);
    EXPECT_EQ(open_note(w.alice.addr, rs[0].tx.enc_note_2, rs[0].tx.cm_new_2), s);
    EXPECT_FALSE(open_note(w.bob.addr, rs[0].tx.enc_note_2, rs[0].tx.cm_new_2));

    // adjacency of the pair in the tree
    const auto p1 = w.ledger.tree().find(p.cm);
    const auto p2 = w.ledger.tree().find(s.cm);
    ASSERT_TRUE(p1 && p2);
    EXPECT_EQ(*p2, *p1 + 1);
}

TEST_F(ExchangeTest, InitiateGuards) {
    const Note four = w.mint(w.alice, kGreen, 4);
    auto x = initiator({kGreen, 5}, {kRed, 7}, 10);
    EXPECT_THROW(x.initiate(w.ledger, w.alice, std::span(&four, 1), w.rng), ExchangeError);
    EXPECT_EQ(x.state(), SessionState::Created);

    const Note six = w.mint(w.alice, kGreen, 6);
    auto y = initiator({kGreen, 5}, {kRed, 7}, 10);
    auto rs = y.initiate(w.ledger, w.alice, std::span(&six, 1), w.rng);
    EXPECT_EQ(rs.size(), 2u);  // split, then offer
    EXPECT_EQ(rs[0].case_id, CaseId::DefaultPayment);
    EXPECT_THROW(y.initiate(w.ledger, w.alice, std::span(&four, 1), w.rng), ExchangeError);

    EXPECT_THROW(initiator({kGreen, 0}, {kRed, 7}, 10), ExchangeError);
    EXPECT_THROW(initiator({0, 5}, {kRed, 7}, 10), ExchangeError);
    EXPECT_THROW(initiator({kGreen, 5}, {kRed, 0}, 10), ExchangeError);
    EXPECT_THROW(ExchangeSession(SessionRole::Initiator, {kGreen, 5}, {kRed, 7}, 10, Bytes{}),
                 ExchangeError);

    const Note red = w.mint(w.alice, kRed, 5);
    auto z = initiator({kGreen, 5}, {kRed, 7}, 10);
    EXPECT_THROW(z.initiate(w.ledger, w.alice, std::span(&red, 1), w.rng), ExchangeError);
}

TEST_F(ExchangeTest, YellowResponseLeavesOneYellowChange) {
    std::vector<Note> f = {w.mint(w.alice, kGreen, 3), w.mint(w.alice, kGreen, 2)};
    const Note four = w.mint(w.bob, kYellow, 4);
    const Height bt = w.ledger.block_n() + 3;
    auto x = initiator({kGreen, 5}, {kYellow, 3}, bt);
    auto y = counterparty({kGreen, 5}, {kYellow, 3}, bt);
    offer(x, f);
    ASSERT_TRUE(y.discover(w.ledger));
    EXPECT_EQ(y.state(), SessionState::Offered);
    EXPECT_EQ(x.poll_counterparty(w.ledger).status, PollStatus::Pending);

    auto rs = y.respond(w.ledger, w.bob, std::span(&four, 1), w.rng);
    w.observe(rs);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0].case_id, CaseId::CounterpartyResponse);
    EXPECT_EQ(rs[0].n_new_1.asset1(), (Asset{kGreen, 5}));
    EXPECT_EQ(rs[0].n_new_2.asset1(), (Asset{kYellow, 1}));
    EXPECT_EQ(y.state(), SessionState::Responded);

    const PollResult poll = x.poll_counterparty(w.ledger);
    ASSERT_EQ(poll.status, PollStatus::Responded);
    ASSERT_TRUE(poll.evidence);
    EXPECT_TRUE(verify_path(w.ledger.tree().root(), *x.primary_nf_expected(), poll.evidence->second));

    EXPECT_THROW(x.complete(w.ledger, w.alice, w.rng), ExchangeError);  // before bt
    w.ledger.advance_block(4);
    w.auditor.observe(x.complete(w.ledger, w.alice, w.rng));
    EXPECT_EQ(x.state(), SessionState::Completed);
    EXPECT_EQ(held("alice", kYellow), 3u);
    EXPECT_EQ(held("alice", kGreen), 0u);
    EXPECT_EQ(held("bob", kGreen), 5u);
    EXPECT_EQ(held("bob", kYellow), 1u);
    expect_clean();
}

TEST_F(ExchangeTest, RedResponseWithChangeAndSplitCompletion) {
    const Note g = w.mint(w.alice, kGreen, 5);
    const Note nine = w.mint(w.bob, kRed, 9);
    const Height bt = w.ledger.block_n() + 2;
    auto x = initiator({kGreen, 5}, {kRed, 7}, bt);
    auto y = counterparty({kGreen, 5}, {kRed, 7}, bt);
    offer(x, {g});
    y.discover(w.ledger);
    auto rs = y.respond(w.ledger, w.bob, std::span(&nine, 1), w.rng);
    w.observe(rs);
    EXPECT_EQ(rs.back().n_new_2.asset1(), (Asset{kRed, 2}));
    w.ledger.advance_block(3);
    const auto done = x.complete(w.ledger, w.alice, w.rng, Amount{4});
    w.auditor.observe(done);
    EXPECT_EQ(done.case_id, CaseId::CompleteByInitiator);
    EXPECT_EQ(done.n_new_1.asset1(), (Asset{kRed, 4}));
    EXPECT_EQ(done.n_new_2.asset1(), (Asset{kRed, 3}));
    EXPECT_EQ(held("alice", kRed), 7u);
    EXPECT_EQ(held("bob", kRed), 2u);
    EXPECT_EQ(held("bob", kGreen), 5u);

    // completing twice spends the sibling nullifier again
    const auto again = build_completion(w.ledger, *x.sibling_note(), *x.primary_note(),
                                        *x.shared_key(), w.alice, std::nullopt, w.rng);
    EXPECT_EQ(w.ledger.verify_and_append(again.tx), Verdict::DuplicateNullifier);
    EXPECT_THROW(x.complete(w.ledger, w.alice, w.rng), ExchangeError);
    expect_clean();
}

TEST_F(ExchangeTest, RespondGuards) {
    const Note g = w.mint(w.alice, kGreen, 5);
    const Note six = w.mint(w.bob, kRed, 6);
    const Note blue = w.mint(w.bob, testing::kBlue, 9);
    const Height bt = w.ledger.block_n() + 2;
    auto x = initiator({kGreen, 5}, {kRed, 7}, bt);
    auto y = counterparty({kGreen, 5}, {kRed, 7}, bt);
    EXPECT_THROW(y.respond(w.ledger, w.bob, std::span(&six, 1), w.rng), ExchangeError);
    offer(x, {g});
    y.discover(w.ledger);
    EXPECT_THROW(y.respond(w.ledger, w.bob, std::span(&six, 1), w.rng), ExchangeError);
    EXPECT_THROW(y.respond(w.ledger, w.bob, std::span(&blue, 1), w.rng), ExchangeError);
    EXPECT_THROW(x.respond(w.ledger, w.alice, std::span(&six, 1), w.rng), ExchangeError);
    EXPECT_EQ(y.state(), SessionState::Offered);

    w.ledger.advance_block(3);
    const Note nine = w.mint(w.bob, kRed, 9);
    EXPECT_THROW(y.respond(w.ledger, w.bob, std::span(&nine, 1), w.rng), ExchangeError);
    // straight to the builder: the prover refuses a response after bt
    EXPECT_THROW(build_response(w.ledger, *x.primary_note(), *x.shared_key(),
                                InputSpend{nine, w.bob.a_sk}, w.bob, w.rng),
                 r1cs::ProvingError);
}

TEST_F(ExchangeTest, CancelAfterThreshold) {
    const Note g = w.mint(w.alice, kGreen, 5);
    const Height bt = w.ledger.block_n() + 2;
    auto x = initiator({kGreen, 5}, {kRed, 7}, bt);
    auto y = counterparty({kGreen, 5}, {kRed, 7}, bt);
    offer(x, {g});
    y.discover(w.ledger);
    EXPECT_THROW(x.cancel(w.ledger, w.alice, w.rng), ExchangeError);
    EXPECT_THROW(build_cancellation(w.ledger, *x.primary_note(), *x.shared_key(),
                                    *x.sibling_note(), w.alice, w.rng),
                 r1cs::ProvingError);
    w.ledger.advance_block(2);
    EXPECT_EQ(x.poll_counterparty(w.ledger).status, PollStatus::Pending);
    w.ledger.advance_block();
    EXPECT_EQ(x.poll_counterparty(w.ledger).status, PollStatus::Expired);
    EXPECT_THROW(x.complete(w.ledger, w.alice, w.rng), ExchangeError);
    const auto r = x.cancel(w.ledger, w.alice, w.rng);
    w.auditor.observe(r);
    EXPECT_EQ(r.case_id, CaseId::CancelByInitiator);
    EXPECT_EQ(x.state(), SessionState::Cancelled);
    EXPECT_EQ(held("alice", kGreen), 5u);
    y.sync(w.ledger);
    EXPECT_EQ(y.state(), SessionState::Cancelled);
    expect_clean();
}

TEST_F(ExchangeTest, CancelAfterResponseCorrectsState) {
    const Note g = w.mint(w.alice, kGreen, 5);
    const Note seven = w.mint(w.bob, kRed, 7);
    const Height bt = w.ledger.block_n() + 1;
    auto x = initiator({kGreen, 5}, {kRed, 7}, bt);
    auto y = counterparty({kGreen, 5}, {kRed, 7}, bt);
    offer(x, {g});
    y.discover(w.ledger);
    w.observe(y.respond(w.ledger, w.bob, std::span(&seven, 1), w.rng));
    w.ledger.advance_block(2);
    EXPECT_THROW(x.cancel(w.ledger, w.alice, w.rng), ExchangeError);
    EXPECT_EQ(x.state(), SessionState::Responded);
    // the race lost at the ledger: the primary's nullifier is taken
    const auto late = build_cancellation(w.ledger, *x.primary_note(), *x.shared_key(),
                                         *x.sibling_note(), w.alice, w.rng);
    EXPECT_EQ(w.ledger.verify_and_append(late.tx), Verdict::DuplicateNullifier);
    w.auditor.observe(x.complete(w.ledger, w.alice, w.rng));
    EXPECT_EQ(x.state(), SessionState::Completed);
    expect_clean();
}

TEST_F(ExchangeTest, CompletionNeedsEvidence) {
    const Note g = w.mint(w.alice, kGreen, 5);
    const Height bt = w.ledger.block_n() + 1;
    auto x = initiator({kGreen, 5}, {kRed, 7}, bt);
    offer(x, {g});
    w.ledger.advance_block(2);
    EXPECT_THROW(x.complete(w.ledger, w.alice, w.rng), ExchangeError);
    EXPECT_THROW(build_completion(w.ledger, *x.sibling_note(), *x.primary_note(),
                                  *x.shared_key(), w.alice, std::nullopt, w.rng),
                 TransactionError);
    w.auditor.observe(x.cancel(w.ledger, w.alice, w.rng));
}

TEST_F(ExchangeTest, SameNoteTwiceIsRefused) {
    const Note g = w.mint(w.alice, kGreen, 5);
    EXPECT_THROW(build_self_split(w.ledger, {InputSpend{g, w.alice.a_sk}, InputSpend{g, w.alice.a_sk}},
                                  w.alice, {kGreen, 5}, w.rng),
                 TransactionError);
}

TEST_F(ExchangeTest, ZeroValueMint) {
    const Note z = w.mint(w.alice, kRed, 0);
    EXPECT_EQ(z.asset1(), (Asset{kRed, 0}));
    EXPECT_FALSE(z.is_dummy());
}

TEST(SiblingAlone, NeverSpendable) {
    const auto rep = testing::sibling_alone_attempts(10, 5);
    EXPECT_GE(rep.attempts, 25);
    EXPECT_EQ(rep.prover_accepted, 0);
    EXPECT_EQ(rep.ledger_accepted, 0);
    for (const auto& [k, v] : rep.outcomes) {
        EXPECT_TRUE(k.ends_with("refused-proving") || k.ends_with("invalid-proof")) << k;
    }
}

}  // namespace
}  // namespace omap
