#include "omap/exchange.hpp"

namespace omap {
namespace {

BuildResult build(const Ledger& ledger, const BuildRequest& req, Rng& rng) {
    return build_joinsplit(ledger.params(), ledger.tree(), ledger.block_n(), req, rng);
}

OutputSpec shared_output(std::span<const std::uint8_t> secret) {
    OutputSpec o;
    o.to = Recipient::shared(Bytes(secret.begin(), secret.end()));
    return o;
}

Amount total(std::span<const Note> notes) {
    Amount sum = 0;
    for (const Note& n : notes) {
        if (sum + n.v1 < sum) throw ExchangeError("note values overflow");
        sum += n.v1;
    }
    return sum;
}

void check_notes(std::span<const Note> notes, Color color, std::string_view what) {
    if (notes.empty() || notes.size() > 2) {
        throw ExchangeError(std::string(what) + " takes one or two notes");
    }
    for (const Note& n : notes) {
        if (n.color1 != color || n.has_debt() || n.is_sibling()) {
            throw ExchangeError(std::string(what) + " notes must be plain notes of color " +
                                std::to_string(color));
        }
    }
}

}  // namespace

Party Party::create(std::string name, const SpendingKey& a_sk) {
    return Party{std::move(name), a_sk, derive_address(a_sk)};
}

BuildResult build_offer(const Ledger& ledger, const std::array<InputSpend, 2>& funding,
                        const Party& self, std::span<const std::uint8_t> shared_secret,
                        Asset give, Asset ask, Height bt, Rng& rng) {
    BuildRequest req;
    req.inputs = funding;
    OutputSpec primary = shared_output(shared_secret);
    primary.color1 = give.color;
    primary.v1 = give.amount;
    primary.color2 = ask.color;
    primary.v2 = ask.amount;
    primary.bt = bt;
    OutputSpec sibling = OutputSpec::plain(self.addr, ask);
    sibling.s = 1;
    sibling.bt = bt;
    req.outputs = {primary, sibling};
    req.intent = CaseId::ExchangeInit;
    return build(ledger, req, rng);
}

BuildResult build_response(const Ledger& ledger, const Note& primary,
                           const SpendingKey& shared_key, const InputSpend& payment,
                           const Party& self, Rng& rng) {
    if (payment.note.v1 < primary.v2) throw ExchangeError("payment does not cover the debt");
    BuildRequest req;
    req.inputs = {InputSpend{primary, shared_key}, payment};
    const Amount change = payment.note.v1 - primary.v2;
    req.outputs = {OutputSpec::plain(self.addr, primary.asset1()),
                   change == 0 ? OutputSpec::dummy(self.addr)
                               : OutputSpec::plain(self.addr, Asset{primary.color2, change})};
    req.intent = CaseId::CounterpartyResponse;
    return build(ledger, req, rng);
}

BuildResult build_cancellation(const Ledger& ledger, const Note& primary,
                               const SpendingKey& shared_key, const Note& sibling,
                               const Party& self, Rng& rng) {
    BuildRequest req;
    req.inputs = {InputSpend{primary, shared_key}, InputSpend{sibling, self.a_sk}};
    req.outputs = {OutputSpec::plain(self.addr, primary.asset1()), OutputSpec::dummy(self.addr)};
    req.intent = CaseId::CancelByInitiator;
    return build(ledger, req, rng);
}

BuildResult build_completion(const Ledger& ledger, const Note& sibling, const Note& primary,
                             const SpendingKey& shared_key, const Party& self,
                             std::optional<Amount> split, Rng& rng) {
    BuildRequest req;
    req.inputs = {InputSpend{sibling, self.a_sk}, make_dummy_input(rng)};
    const Asset got = sibling.asset1();
    if (split && *split > got.amount) throw ExchangeError("split exceeds the received amount");
    if (split && *split != 0 && *split != got.amount) {
        req.outputs = {OutputSpec::plain(self.addr, Asset{got.color, *split}),
                       OutputSpec::plain(self.addr, Asset{got.color, got.amount - *split})};
    } else {
        req.outputs = {OutputSpec::plain(self.addr, got), OutputSpec::dummy(self.addr)};
    }
    req.evidence = SiblingEvidence{primary, shared_key};
    req.intent = CaseId::CompleteByInitiator;
    return build(ledger, req, rng);
}

BuildResult build_self_split(const Ledger& ledger, const std::array<InputSpend, 2>& inputs,
                             const Party& self, Asset first, Rng& rng) {
    const Amount sum = inputs[0].note.v1 + inputs[1].note.v1;
    if (first.amount > sum) throw ExchangeError("split exceeds the input total");
    BuildRequest req;
    req.inputs = inputs;
    const Amount rest = sum - first.amount;
    req.outputs = {OutputSpec::plain(self.addr, first),
                   rest == 0 ? OutputSpec::dummy(self.addr)
                             : OutputSpec::plain(self.addr, Asset{first.color, rest})};
    req.intent = CaseId::DefaultPayment;
    return build(ledger, req, rng);
}

std::string_view state_name(SessionState s) {
    switch (s) {
        case SessionState::Created: return "created";
        case SessionState::Offered: return "offered";
        case SessionState::Responded: return "responded";
        case SessionState::Cancelled: return "cancelled";
        case SessionState::Completed: return "completed";
        case SessionState::Aborted: return "aborted";
    }
    return "?";
}

ExchangeSession::ExchangeSession(SessionRole role, Asset give, Asset ask, Height bt,
                                 Bytes shared_secret)
    : role_(role), give_(give), ask_(ask), bt_(bt), secret_(std::move(shared_secret)) {
    if (give.color == kDummyColor || ask.color == kDummyColor) {
        throw ExchangeError("color 0 cannot be exchanged");
    }
    if (give.amount == 0 || ask.amount == 0) throw ExchangeError("amounts must be nonzero");
    if (secret_.empty()) throw ExchangeError("shared secret is empty");
}

void ExchangeSession::require(SessionRole r, std::initializer_list<SessionState> allowed,
                              std::string_view op) const {
    if (role_ != r) throw ExchangeError(std::string(op) + " is not available to this role");
    for (SessionState s : allowed) {
        if (state_ == s) return;
    }
    throw ExchangeError(std::string(op) + " is not allowed in state " +
                        std::string(state_name(state_)));
}

Verdict ExchangeSession::append(Ledger& ledger, const BuildResult& r) {
    const Verdict v = ledger.verify_and_append(r.tx);
    if (v != Verdict::Accept) throw LedgerRejected(v);
    return v;
}

std::vector<BuildResult> ExchangeSession::initiate(Ledger& ledger, const Party& me,
                                                   std::span<const Note> funding, Rng& rng) {
    require(SessionRole::Initiator, {SessionState::Created}, "initiate");
    check_notes(funding, give_.color, "funding");
    const Amount have = total(funding);
    if (have < give_.amount) throw ExchangeError("funding does not cover the offered amount");

    std::vector<BuildResult> out;
    std::array<InputSpend, 2> inputs = {InputSpend{funding[0], me.a_sk},
                                        funding.size() == 2 ? InputSpend{funding[1], me.a_sk}
                                                            : make_dummy_input(rng)};
    if (have != give_.amount) {
        out.push_back(build_self_split(ledger, inputs, me, give_, rng));
        append(ledger, out.back());
        inputs = {InputSpend{out.back().n_new_1, me.a_sk}, make_dummy_input(rng)};
    }

    BuildResult offer = build_offer(ledger, inputs, me, secret_, give_, ask_, bt_, rng);
    append(ledger, offer);
    primary_ = offer.n_new_1;
    sibling_ = offer.n_new_2;
    shared_key_ = derive_shared_spending_key(secret_, offer.tx.h_sig);
    primary_nf_ = prf_nf(*shared_key_, primary_->rho);
    sibling_nf_ = prf_nf(me.a_sk, sibling_->rho);
    state_ = SessionState::Offered;
    out.push_back(std::move(offer));
    return out;
}

bool ExchangeSession::discover(const Ledger& ledger) {
    require(SessionRole::Counterparty, {SessionState::Created}, "discover");
    for (const auto& e : ledger.entries()) {
        const auto* tx = std::get_if<JoinSplitTransaction>(&e.tx);
        if (!tx) continue;
        const SpendingKey key = derive_shared_spending_key(secret_, tx->h_sig);
        const PaymentAddress addr = derive_address(key);
        for (const auto& [ct, cm] : {std::pair{&tx->enc_note_1, &tx->cm_new_1},
                                     std::pair{&tx->enc_note_2, &tx->cm_new_2}}) {
            auto n = open_note(addr, *ct, *cm);
            if (!n || n->a_pk != addr.a_pk) continue;
            if (n->asset1() != give_ || n->color2 != ask_.color || n->v2 != ask_.amount ||
                n->bt != bt_) {
                continue;
            }
            primary_ = *n;
            shared_key_ = key;
            primary_nf_ = prf_nf(key, n->rho);
            state_ = ledger.is_spent(*primary_nf_) ? SessionState::Cancelled
                                                   : SessionState::Offered;
            return true;
        }
    }
    return false;
}

std::vector<BuildResult> ExchangeSession::respond(Ledger& ledger, const Party& me,
                                                  std::span<const Note> payment, Rng& rng) {
    require(SessionRole::Counterparty, {SessionState::Offered}, "respond");
    if (ledger.block_n() > bt_) throw ExchangeError("the offer has expired");
    if (ledger.is_spent(*primary_nf_)) {
        state_ = SessionState::Cancelled;
        throw ExchangeError("the offer was withdrawn");
    }
    check_notes(payment, ask_.color, "payment");
    if (total(payment) < ask_.amount) throw ExchangeError("payment does not cover the debt");

    std::vector<BuildResult> out;
    InputSpend pay{payment[0], me.a_sk};
    if (payment.size() == 2) {
        const std::array<InputSpend, 2> both = {pay, InputSpend{payment[1], me.a_sk}};
        out.push_back(build_self_split(ledger, both, me, Asset{ask_.color, total(payment)}, rng));
        append(ledger, out.back());
        pay = InputSpend{out.back().n_new_1, me.a_sk};
    }

    BuildResult r = build_response(ledger, *primary_, *shared_key_, pay, me, rng);
    append(ledger, r);
    state_ = SessionState::Responded;
    out.push_back(std::move(r));
    return out;
}

BuildResult ExchangeSession::cancel(Ledger& ledger, const Party& me, Rng& rng) {
    require(SessionRole::Initiator, {SessionState::Offered}, "cancel");
    if (ledger.block_n() <= bt_) throw ExchangeError("cancel is only possible after the threshold");
    if (ledger.is_spent(*primary_nf_)) {
        state_ = SessionState::Responded;
        throw ExchangeError("the counterparty has already responded");
    }
    BuildResult r = build_cancellation(ledger, *primary_, *shared_key_, *sibling_, me, rng);
    append(ledger, r);
    state_ = SessionState::Cancelled;
    return r;
}

PollResult ExchangeSession::poll_counterparty(const Ledger& ledger) const {
    if (role_ != SessionRole::Initiator || !primary_nf_) {
        throw ExchangeError("poll needs an offered initiator session");
    }
    PollResult res;
    if (auto ev = ledger.scan_nullifier(*primary_nf_)) {
        res.status = PollStatus::Responded;
        res.evidence = std::move(ev);
    } else if (ledger.block_n() > bt_) {
        res.status = PollStatus::Expired;
    }
    return res;
}

BuildResult ExchangeSession::complete(Ledger& ledger, const Party& me, Rng& rng,
                                      std::optional<Amount> split) {
    require(SessionRole::Initiator, {SessionState::Offered, SessionState::Responded},
            "complete");
    if (ledger.block_n() <= bt_) {
        throw ExchangeError("complete is only possible after the threshold");
    }
    if (!ledger.is_spent(*primary_nf_)) throw ExchangeError("the counterparty has not responded");
    state_ = SessionState::Responded;
    BuildResult r =
        build_completion(ledger, *sibling_, *primary_, *shared_key_, me, split, rng);
    append(ledger, r);
    state_ = SessionState::Completed;
    return r;
}

void ExchangeSession::sync(const Ledger& ledger) {
    if (!primary_nf_ || !ledger.is_spent(*primary_nf_)) return;
    if (state_ != SessionState::Offered && state_ != SessionState::Responded) return;
    bool cancelled = false;
    for (const auto& e : ledger.entries()) {
        const auto* tx = std::get_if<JoinSplitTransaction>(&e.tx);
        if (!tx || (tx->nf_old_1 != *primary_nf_ && tx->nf_old_2 != *primary_nf_)) continue;
        // A cancellation spends the sibling next to the primary. The
        // counterparty cannot see that; a primary it did not spend itself was
        // reclaimed.
        if (sibling_nf_) {
            cancelled = tx->nf_old_1 == *sibling_nf_ || tx->nf_old_2 == *sibling_nf_;
        } else {
            cancelled = state_ != SessionState::Responded;
        }
        break;
    }
    if (cancelled) {
        state_ = SessionState::Cancelled;
    } else if (state_ == SessionState::Offered) {
        state_ = SessionState::Responded;
        if (role_ == SessionRole::Initiator && ledger.is_spent(*sibling_nf_)) {
            state_ = SessionState::Completed;
        }
    }
}

}  // namespace omap
