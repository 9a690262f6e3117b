#include <sstream>

#include "omap/harness.hpp"

namespace omap {
namespace {

constexpr std::size_t kMaxExamples = 8;

struct SessionStats {
    bool completed = false;
    bool cancelled = false;
    bool both = false;
    bool neither = false;
    bool unfair = false;
    std::uint64_t violations = 0;
    std::uint64_t transactions = 0;
    std::uint64_t offers = 0;
    std::map<std::string, std::uint64_t> attempts;
    std::vector<std::string> examples;
};

class SessionRun {
public:
    SessionRun(const r1cs::SetupParams& params, Rng rng)
        : rng_(std::move(rng)),
          ledger_(params),
          alice_(Party::create("alice", SpendingKey{rng_.next_field_digest()})),
          bob_(Party::create("bob", SpendingKey{rng_.next_field_digest()})) {
        auditor_.add_owner(alice_.name, alice_.a_sk);
        auditor_.add_owner(bob_.name, bob_.a_sk);
    }

    SessionStats run() {
        try {
            play();
        } catch (const std::exception& e) {
            violation(std::string("unexpected error: ") + e.what());
        }
        return std::move(stats_);
    }

private:
    void violation(const std::string& what) {
        ++stats_.violations;
        if (stats_.examples.size() < kMaxExamples) stats_.examples.push_back(what);
    }

    void audit() {
        for (auto& v : auditor_.violations(ledger_)) violation(v);
    }

    Note mint(const Party& p, Color c, Amount v) {
        auto [tx, note] = build_mint(p.addr, c, v, rng_);
        if (ledger_.apply_mint(tx) != MintVerdict::Accept) throw std::logic_error("mint rejected");
        auditor_.observe(note);
        audit();
        return note;
    }

    /// One or two notes totalling `v`, or `v + extra` when extra > 0.
    std::vector<Note> fund(const Party& p, Color c, Amount v, Amount extra, bool two) {
        const Amount total = v + extra;
        if (two && total >= 2) {
            const Amount a = rng_.uniform(1, total - 1);
            return {mint(p, c, a), mint(p, c, total - a)};
        }
        return {mint(p, c, total)};
    }

    // `check` is off while a multi-transaction operation is only partly observed.
    void accepted(const BuildResult& r, bool check = true) {
        auditor_.observe(r);
        ++stats_.transactions;
        if (r.case_id == CaseId::ExchangeInit) {
            ++stats_.offers;
            const auto p1 = ledger_.tree().find(r.n_new_1.cm);
            const auto p2 = ledger_.tree().find(r.n_new_2.cm);
            if (!p1 || !p2 || (*p1 + 1 != *p2 && *p2 + 1 != *p1)) {
                violation("offer outputs are not adjacent in the tree");
            }
        }
        const Digest32& nf = *init_.primary_nf_expected();
        if (r.tx.nf_old_1 == nf || r.tx.nf_old_2 == nf) {
            if (r.case_id == CaseId::CancelByInitiator) ++case2_;
            if (r.case_id == CaseId::CounterpartyResponse) ++case3_;
        }
        if (check) audit();
    }

    void record(const std::string& who, const std::string& outcome) {
        ++stats_.attempts[who + " " + outcome];
    }

    // Submits a built transaction and records the outcome under `who`.
    void submit(const std::string& who, const BuildResult& r) {
        const Verdict v = ledger_.verify_and_append(r.tx);
        record(who, v == Verdict::Accept ? "accept" : "reject " + std::string(verdict_name(v)));
        if (v == Verdict::Accept) accepted(r);
    }

    template <typename F>
    void attempt(const std::string& who, F&& f) {
        try {
            f();
        } catch (const LedgerRejected& e) {
            record(who, "reject " + std::string(verdict_name(e.verdict)));
        } catch (const r1cs::ProvingError&) {
            record(who, "refuse proving");
        } catch (const TransactionError&) {
            record(who, "refuse build");
        } catch (const ExchangeError&) {
            record(who, "refuse guard");
        }
    }

    void counterparty_acts(bool forced) {
        if (init_.primary_note() && !cp_.primary_note() &&
            cp_.state() == SessionState::Created && !cp_.discover(ledger_)) {
            violation("counterparty could not find the offer");
            return;
        }
        if (forced && payment_.size() == 1) {
            attempt("respond-forced", [&] {
                BuildResult r = build_response(ledger_, *cp_.primary_note(), *cp_.shared_key(),
                                               InputSpend{payment_[0], bob_.a_sk}, bob_, rng_);
                if (stale_) {
                    pending_ = std::move(r);
                    record("respond-forced", "held");
                } else {
                    submit("respond-forced", r);
                }
            });
            return;
        }
        attempt("respond", [&] {
            auto rs = cp_.respond(ledger_, bob_, payment_, rng_);
            for (const auto& r : rs) accepted(r, false);
            audit();
            record("respond", "accept");
        });
    }

    void initiator_acts(bool forced) {
        if (forced) {
            attempt("cancel-forced", [&] {
                submit("cancel-forced",
                       build_cancellation(ledger_, *init_.primary_note(), *init_.shared_key(),
                                          *init_.sibling_note(), alice_, rng_));
            });
            return;
        }
        attempt("cancel", [&] {
            accepted(init_.cancel(ledger_, alice_, rng_));
            record("cancel", "accept");
        });
    }

    void play() {
        const Color give_c = static_cast<Color>(rng_.uniform(1, 8));
        Color ask_c = static_cast<Color>(rng_.uniform(1, 7));
        if (ask_c >= give_c) ++ask_c;
        const Asset give{give_c, rng_.uniform(1, 1000)};
        const Asset ask{ask_c, rng_.uniform(1, 1000)};

        const auto fshape = rng_.uniform(0, 3);
        const auto funding = fund(alice_, give.color, give.amount,
                                  fshape == 3 ? rng_.uniform(1, 100) : 0, fshape == 2);
        const auto pshape = rng_.uniform(0, 9);
        bool short_pay = false;
        if (pshape <= 4) {
            payment_ = fund(bob_, ask.color, ask.amount, 0, false);
        } else if (pshape <= 7) {
            payment_ = fund(bob_, ask.color, ask.amount, rng_.uniform(1, 100), false);
        } else if (pshape == 8) {
            payment_ = fund(bob_, ask.color, ask.amount, rng_.uniform(0, 5), true);
        } else {
            short_pay = ask.amount > 1;
            payment_ = fund(bob_, ask.color, short_pay ? ask.amount - 1 : ask.amount, 0, false);
        }

        const auto before_a = auditor_.holdings(alice_.name, ledger_);
        const auto before_b = auditor_.holdings(bob_.name, ledger_);

        const Height bt = ledger_.block_n() + static_cast<Height>(rng_.uniform(1, 3));
        const Digest32 secret = rng_.next_digest();
        const Bytes s(secret.bytes.begin(), secret.bytes.end());
        init_ = ExchangeSession(SessionRole::Initiator, give, ask, bt, s);
        cp_ = ExchangeSession(SessionRole::Counterparty, give, ask, bt, s);

        const auto opened = init_.initiate(ledger_, alice_, funding, rng_);
        auditor_.add_owner("escrow", *init_.shared_key());
        for (const auto& r : opened) accepted(r, false);
        audit();

        // Respond and cancel attempts land anywhere around bt, in either order,
        // through the guarded session or straight at the builders.
        const bool absent = rng_.uniform(0, 4) == 0;
        const Height start = ledger_.block_n();
        const Height h_r = start + static_cast<Height>(rng_.uniform(0, bt - start + 1));
        const Height h_c = bt - 1 + static_cast<Height>(rng_.uniform(0, 3));
        const bool bob_forced = rng_.coin();
        const bool alice_forced = rng_.coin();
        stale_ = bob_forced && rng_.uniform(0, 9) == 0;
        const bool bob_first = rng_.coin();
        const Height end = std::max<Height>(h_r + 1, h_c);

        for (Height h = start; h <= end; ++h) {
            if (pending_) {
                submit("respond-stale", *pending_);
                pending_.reset();
            }
            const bool bob_now = !absent && h == h_r;
            const bool alice_now = h == h_c;
            if (bob_now && bob_first) counterparty_acts(bob_forced);
            if (alice_now) initiator_acts(alice_forced);
            if (bob_now && !bob_first) counterparty_acts(bob_forced);
            if (h < end) ledger_.advance_block(1);
        }
        if (pending_) {
            ledger_.advance_block(1);
            submit("respond-stale", *pending_);
            pending_.reset();
        }

        if (rng_.uniform(0, 4) == 0) {
            attempt("sibling-alone", [&] {
                BuildRequest req;
                req.inputs = {InputSpend{*init_.sibling_note(), alice_.a_sk},
                              make_dummy_input(rng_)};
                req.outputs = {OutputSpec::plain(alice_.addr, init_.sibling_note()->asset1()),
                               OutputSpec::dummy(alice_.addr)};
                BuildResult r = build_joinsplit(ledger_.params(), ledger_.tree(),
                                                ledger_.block_n(), req, rng_);
                violation("sibling spent alone was proved");
                submit("sibling-alone", r);
            });
        }

        stats_.both = case2_ > 0 && case3_ > 0;
        if (case2_ + case3_ > 1 && !stats_.both) violation("primary spent more than once");
        init_.sync(ledger_);
        cp_.sync(ledger_);

        // Resolution by an honest initiator after bt.
        while (ledger_.block_n() <= bt) ledger_.advance_block(1);
        if (case2_ == 0 && case3_ == 0) {
            try {
                accepted(init_.cancel(ledger_, alice_, rng_));
            } catch (const std::exception& e) {
                stats_.neither = true;
                violation(std::string("cancel after bt failed: ") + e.what());
            }
        } else if (case3_ > 0) {
            if (init_.poll_counterparty(ledger_).status != PollStatus::Responded) {
                violation("response not visible to the initiator");
            }
            try {
                accepted(init_.complete(ledger_, alice_, rng_));
            } catch (const std::exception& e) {
                stats_.neither = true;
                violation(std::string("completion failed: ") + e.what());
            }
            if (rng_.uniform(0, 4) == 0) {
                attempt("complete-twice", [&] {
                    submit("complete-twice",
                           build_completion(ledger_, *init_.sibling_note(), *init_.primary_note(),
                                            *init_.shared_key(), alice_, std::nullopt, rng_));
                });
            }
        }
        cp_.sync(ledger_);

        stats_.completed = init_.state() == SessionState::Completed;
        stats_.cancelled = init_.state() == SessionState::Cancelled;
        if (!stats_.completed && !stats_.cancelled) {
            violation("session ended in state " + std::string(state_name(init_.state())));
        }
        if (short_pay && case3_ > 0) violation("short payment was accepted");

        // Net per-color deltas: (-give, +ask) for the initiator and the reverse
        // for the counterparty on completion, nothing on cancellation.
        auto after_a = auditor_.holdings(alice_.name, ledger_);
        auto after_b = auditor_.holdings(bob_.name, ledger_);
        auto expect_a = before_a;
        auto expect_b = before_b;
        if (stats_.completed) {
            expect_a[give.color] -= give.amount;
            expect_a[ask.color] += ask.amount;
            expect_b[give.color] += give.amount;
            expect_b[ask.color] -= ask.amount;
        }
        std::erase_if(after_a, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(after_b, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(expect_a, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(expect_b, [](const auto& kv) { return kv.second == 0; });
        if (after_a != expect_a || after_b != expect_b) {
            stats_.unfair = true;
            violation("net balances do not match the exchange terms");
        }
    }

    Rng rng_;
    Ledger ledger_;
    Auditor auditor_;
    Party alice_;
    Party bob_;
    ExchangeSession init_{SessionRole::Initiator, {1, 1}, {2, 1}, 0, Bytes{0}};
    ExchangeSession cp_{SessionRole::Counterparty, {1, 1}, {2, 1}, 0, Bytes{0}};
    std::vector<Note> payment_;
    std::optional<BuildResult> pending_;
    bool stale_ = false;
    int case2_ = 0;
    int case3_ = 0;
    SessionStats stats_;
};

}  // namespace

std::string FuzzReport::to_string() const {
    std::ostringstream os;
    os << "sessions " << sessions << '\n'
       << "completed " << completed << '\n'
       << "cancelled " << cancelled << '\n'
       << "both-accepted " << both_accepted << '\n'
       << "neither-reachable " << neither_reachable << '\n'
       << "invariant-violations " << invariant_violations << '\n'
       << "unfair " << unfair << '\n'
       << "transactions " << transactions << '\n'
       << "offers " << offers << '\n';
    for (const auto& [k, v] : attempts) os << "attempt " << k << ' ' << v << '\n';
    for (const auto& e : examples) os << "example " << e << '\n';
    return os.str();
}

FuzzReport run_random_schedules(std::uint64_t count, std::uint64_t seed, std::size_t depth) {
    if (count == 0) throw std::invalid_argument("count must be at least 1");
    const r1cs::SetupParams params = r1cs::setup(depth, Rng(seed).fork(~0ULL).next_digest());

    std::vector<SessionStats> results(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        Rng base(seed);
        results[static_cast<std::size_t>(i)] =
            SessionRun(params, base.fork(static_cast<std::uint64_t>(i))).run();
    }

    FuzzReport rep;
    rep.sessions = count;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const SessionStats& s = results[i];
        rep.completed += s.completed;
        rep.cancelled += s.cancelled;
        rep.both_accepted += s.both;
        rep.neither_reachable += s.neither;
        rep.unfair += s.unfair;
        rep.invariant_violations += s.violations;
        rep.transactions += s.transactions;
        rep.offers += s.offers;
        for (const auto& [k, v] : s.attempts) rep.attempts[k] += v;
        for (const auto& e : s.examples) {
            if (rep.examples.size() < kMaxExamples) {
                rep.examples.push_back("session " + std::to_string(i) + ": " + e);
            }
        }
    }
    return rep;
}

}  // namespace omap
