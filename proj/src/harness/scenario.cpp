#include <charconv>
#include <istream>
#include <set>
#include <sstream>

#include "omap/harness.hpp"

namespace omap {
namespace {

struct Arity {
    std::size_t min;
    std::size_t max;
};

const std::map<std::string, Arity, std::less<>>& commands() {
    static const std::map<std::string, Arity, std::less<>> table = {
        {"color", {2, 2}},
        {"party", {1, 1}},
        {"mint", {3, 3}},
        {"pay", {4, 4}},
        {"session", {11, 11}},
        {"initiate", {1, 1}},
        {"respond", {1, 2}},
        {"cancel", {1, 2}},
        {"complete", {1, 4}},
        {"advance", {0, 1}},
        {"replay", {0, 0}},
        {"attempt_double_spend", {1, 1}},
        {"attempt_nullifier_collision", {1, 1}},
        {"attempt_sibling_alone", {1, 2}},
        {"attempt_forged_proof", {1, 1}},
        {"expect", {3, 5}},
    };
    return table;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

template <typename T>
std::optional<T> parse_uint(std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

Expectation parse_expectation(int line, std::string_view text) {
    auto w = split_words(text);
    if (w.empty() || w.size() > 2) throw ScenarioParseError(line, "malformed expectation");
    Expectation e;
    if (w[0] == "accept" && w.size() == 1) {
        e.kind = OutcomeKind::Accept;
    } else if (w[0] == "reject") {
        e.kind = OutcomeKind::Reject;
    } else if (w[0] == "refuse") {
        e.kind = OutcomeKind::Refuse;
    } else {
        throw ScenarioParseError(line, "unknown outcome '" + w[0] + "'");
    }
    if (w.size() == 2) e.reason = w[1];
    return e;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        std::optional<Expectation> expect;
        if (auto arrow = text.find("=>"); arrow != std::string_view::npos) {
            expect = parse_expectation(line, text.substr(arrow + 2));
            text = text.substr(0, arrow);
        }
        auto words = split_words(text);
        if (words.empty()) {
            if (expect) throw ScenarioParseError(line, "expectation without a command");
            continue;
        }
        const std::string& cmd = words[0];
        if (cmd == "seed" || cmd == "depth") {
            if (words.size() != 2) throw ScenarioParseError(line, cmd + " takes one number");
            auto v = parse_uint<std::uint64_t>(words[1]);
            if (!v) throw ScenarioParseError(line, "bad number '" + words[1] + "'");
            if (cmd == "seed") {
                sc.seed = *v;
            } else {
                if (*v < 1 || *v > 32) throw ScenarioParseError(line, "depth must be in 1..32");
                sc.depth = *v;
            }
            continue;
        }
        auto it = commands().find(cmd);
        if (it == commands().end()) throw ScenarioParseError(line, "unknown command '" + cmd + "'");
        const std::size_t nargs = words.size() - 1;
        if (nargs < it->second.min || nargs > it->second.max) {
            throw ScenarioParseError(line, "wrong number of arguments for " + cmd);
        }
        if (expect && (cmd == "expect" || cmd == "color" || cmd == "party" || cmd == "session" ||
                       cmd == "advance")) {
            throw ScenarioParseError(line, cmd + " takes no outcome expectation");
        }
        sc.steps.push_back(Step{line, std::move(words), expect});
    }
    return sc;
}

Scenario parse_scenario(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_scenario(in);
}

namespace {

struct Outcome {
    OutcomeKind kind = OutcomeKind::Accept;
    std::string reason;
    std::string detail;
};

std::string outcome_text(const Outcome& o) {
    std::string s = o.kind == OutcomeKind::Accept   ? "accept"
                    : o.kind == OutcomeKind::Reject ? "reject"
                                                    : "refuse";
    if (!o.reason.empty()) s += " " + o.reason;
    return s;
}

bool matches(const Expectation& e, const Outcome& o) {
    return e.kind == o.kind && (e.reason.empty() || e.reason == o.reason);
}

std::string expectation_text(const Expectation& e) {
    return outcome_text(Outcome{e.kind, e.reason, {}});
}

std::string short_hex(const Digest32& d) { return d.hex().substr(0, 16); }

std::string tx_id(const JoinSplitTransaction& tx) {
    const TxBytes b = serialize_tx(tx);
    return short_hex(crh(b));
}

bool edge(SessionRole role, SessionState from, SessionState to) {
    using S = SessionState;
    if (role == SessionRole::Initiator) {
        return (from == S::Created && to == S::Offered) ||
               (from == S::Offered && (to == S::Responded || to == S::Cancelled)) ||
               (from == S::Responded && to == S::Completed);
    }
    return (from == S::Created && to == S::Offered) ||
           (from == S::Offered && (to == S::Responded || to == S::Cancelled));
}

// One step may take several transitions (discover then respond, or a
// reconciled response then complete); each hop must be an edge.
bool legal(SessionRole role, SessionState from, SessionState to) {
    if (from == to) return true;
    for (int s = 0; s <= static_cast<int>(SessionState::Aborted); ++s) {
        const auto mid = static_cast<SessionState>(s);
        if (edge(role, from, mid) && (mid == to || legal(role, mid, to))) return true;
    }
    return false;
}

/// Funding choice: an exact single note, an exact pair, the smallest single
/// note that covers, then the two largest notes. Falls back to the largest
/// notes so the caller reports the shortfall.
std::vector<Note> pick_notes(const std::vector<Note>& sorted, Amount amount) {
    for (const Note& n : sorted) {
        if (n.v1 == amount) return {n};
    }
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[i].v1 + sorted[j].v1 == amount) return {sorted[i], sorted[j]};
        }
    }
    for (const Note& n : sorted) {
        if (n.v1 > amount) return {n};
    }
    if (sorted.size() >= 2) return {sorted[sorted.size() - 2], sorted.back()};
    return sorted;
}

struct SessionPair {
    std::string initiator;
    std::string counterparty;
    ExchangeSession init;
    ExchangeSession cp;
};

class Runner {
public:
    Runner(const Scenario& sc, const RunOptions& opts)
        : sc_(sc), rng_(sc.seed), ledger_(r1cs::setup(opts.depth.value_or(sc.depth),
                                                      rng_.next_digest())) {}

    RunResult run() {
        for (const Step& step : sc_.steps) {
            ++index_;
            std::string head = "#" + std::to_string(index_) + " h=" +
                               std::to_string(ledger_.block_n()) + " " + join(step.words);
            std::string line;
            try {
                line = head + " -> " + execute(step);
            } catch (const ScenarioParseError& e) {
                res_.trace.push_back(head + " -> parse error");
                res_.failures.push_back(e.what());
                res_.exit_code = exit_code::kParse;
                break;
            }
            res_.trace.push_back(line);
            if (!audit(step)) break;
        }
        res_.trace.push_back("end entries=" + std::to_string(ledger_.entries().size()) +
                             " leaves=" + std::to_string(ledger_.tree().size()) +
                             " root=" + short_hex(ledger_.tree().root()) +
                             " exit=" + std::to_string(res_.exit_code));
        std::ostringstream dump;
        ledger_.dump(dump);
        res_.ledger_dump = dump.str();
        return std::move(res_);
    }

private:
    static std::string join(const std::vector<std::string>& w) {
        std::string s;
        for (const auto& x : w) s += (s.empty() ? "" : " ") + x;
        return s;
    }

    [[noreturn]] void fail_parse(const Step& step, const std::string& msg) const {
        throw ScenarioParseError(step.line, msg);
    }

    Amount amount(const Step& step, const std::string& s) const {
        auto v = parse_uint<Amount>(s);
        if (!v) fail_parse(step, "bad amount '" + s + "'");
        return *v;
    }

    Color color(const Step& step, const std::string& s) const {
        if (auto it = colors_.find(s); it != colors_.end()) return it->second;
        if (auto v = parse_uint<Color>(s)) return *v;
        fail_parse(step, "unknown color '" + s + "'");
    }

    const Party& party(const Step& step, const std::string& name) const {
        auto it = parties_.find(name);
        if (it == parties_.end()) fail_parse(step, "unknown party '" + name + "'");
        return it->second;
    }

    SessionPair& session(const Step& step, const std::string& name) {
        auto it = sessions_.find(name);
        if (it == sessions_.end()) fail_parse(step, "unknown session '" + name + "'");
        return it->second;
    }

    std::string execute(const Step& step) {
        const auto& w = step.words;
        const std::string& cmd = w[0];
        if (cmd == "color") {
            colors_[w[1]] = static_cast<Color>(amount(step, w[2]));
            return "ok";
        }
        if (cmd == "party") {
            if (parties_.contains(w[1])) fail_parse(step, "party '" + w[1] + "' already exists");
            Party p = Party::create(w[1], SpendingKey{rng_.next_field_digest()});
            auditor_.add_owner(p.name, p.a_sk);
            parties_.emplace(w[1], std::move(p));
            return "ok";
        }
        if (cmd == "session") return define_session(step);
        if (cmd == "advance") {
            const Amount n = w.size() == 2 ? amount(step, w[1]) : 1;
            if (n == 0) fail_parse(step, "advance needs n >= 1");
            ledger_.advance_block(static_cast<Height>(n));
            return "ok h=" + std::to_string(ledger_.block_n());
        }
        if (cmd == "expect") return check_expectation(step);

        const Outcome o = perform(step);
        std::string text = outcome_text(o);
        if (!o.detail.empty()) text += " " + o.detail;
        const Expectation want = step.expect.value_or(Expectation{});
        if (!matches(want, o)) {
            res_.failures.push_back(where(step) + ": expected " +
                                    expectation_text(want) + ", got " + outcome_text(o));
            res_.exit_code = std::max(res_.exit_code, exit_code::kExpectation);
            text += " [expected " + expectation_text(want) + "]";
        }
        return text;
    }

    // session NAME INITIATOR COUNTERPARTY give N COLOR ask N COLOR bt H|+H
    std::string define_session(const Step& step) {
        const auto& w = step.words;
        if (w[4] != "give" || w[7] != "ask" || w[10] != "bt") {
            fail_parse(step, "usage: session NAME INITIATOR COUNTERPARTY give N COLOR ask N "
                             "COLOR bt H|+H");
        }
        if (sessions_.contains(w[1])) fail_parse(step, "session '" + w[1] + "' already exists");
        party(step, w[2]);
        party(step, w[3]);
        const Asset give{color(step, w[6]), amount(step, w[5])};
        const Asset ask{color(step, w[9]), amount(step, w[8])};
        const bool relative = w[11][0] == '+';
        const Amount h = amount(step, relative ? w[11].substr(1) : w[11]);
        const Height bt = static_cast<Height>(relative ? ledger_.block_n() + h : h);
        const Digest32 secret = rng_.next_digest();
        const Bytes s(secret.bytes.begin(), secret.bytes.end());
        try {
            sessions_.emplace(
                w[1], SessionPair{w[2], w[3],
                                  ExchangeSession(SessionRole::Initiator, give, ask, bt, s),
                                  ExchangeSession(SessionRole::Counterparty, give, ask, bt, s)});
        } catch (const ExchangeError& e) {
            fail_parse(step, e.what());
        }
        return "ok bt=" + std::to_string(bt);
    }

    std::string check_expectation(const Step& step) {
        const auto& w = step.words;
        std::string got;
        std::string want;
        if (w[1] == "balance" && w.size() == 5) {
            const auto held = auditor_.holdings(party(step, w[2]).name, ledger_);
            const Color c = color(step, w[4]);
            const Amount have = held.contains(c) ? held.at(c) : 0;
            got = std::to_string(have);
            want = std::to_string(amount(step, w[3]));
        } else if (w[1] == "state" && (w.size() == 4 || w.size() == 5)) {
            SessionPair& sp = session(step, w[2]);
            bool cp = false;
            if (w.size() == 5) {
                if (w[3] != "counterparty" && w[3] != "initiator") {
                    fail_parse(step, "usage: expect state S [initiator|counterparty] STATE");
                }
                cp = w[3] == "counterparty";
            }
            got = std::string(state_name(cp ? sp.cp.state() : sp.init.state()));
            want = w.back();
        } else {
            fail_parse(step, "usage: expect balance PARTY N COLOR | expect state S [SIDE] STATE");
        }
        if (got == want) return "ok";
        res_.failures.push_back(where(step) + ": expected " +
                                want + ", got " + got);
        res_.exit_code = std::max(res_.exit_code, exit_code::kExpectation);
        return "mismatch got " + got;
    }

    Verdict submit(const BuildResult& r) {
        const Verdict v = ledger_.verify_and_append(r.tx);
        if (v == Verdict::Accept) {
            auditor_.observe(r);
            last_tx_ = r.tx;
        }
        return v;
    }

    Outcome from_verdict(Verdict v, const std::vector<const BuildResult*>& rs) {
        Outcome o;
        if (v != Verdict::Accept) {
            o.kind = OutcomeKind::Reject;
            o.reason = std::string(verdict_name(v));
            return o;
        }
        std::string cases;
        std::string ids;
        for (const BuildResult* r : rs) {
            cases += (cases.empty() ? "" : ",") + std::string(case_name(r->case_id));
            ids += (ids.empty() ? "" : ",") + tx_id(r->tx);
        }
        o.detail = "case=" + cases + " tx=" + ids;
        return o;
    }

    Outcome accepted(const std::vector<BuildResult>& rs) {
        for (const auto& r : rs) {
            auditor_.observe(r);
            last_tx_ = r.tx;
        }
        std::vector<const BuildResult*> ptrs;
        for (const auto& r : rs) ptrs.push_back(&r);
        return from_verdict(Verdict::Accept, ptrs);
    }

    Outcome submitted(const BuildResult& r) { return from_verdict(submit(r), {&r}); }

    InputSpend own(const Step& step, const std::string& name, const Note& n) {
        return InputSpend{n, party(step, name).a_sk};
    }

    BuildRequest self_payment(const Party& p, const Note& n) {
        BuildRequest req;
        req.inputs = {InputSpend{n, p.a_sk}, make_dummy_input(rng_)};
        req.outputs = {OutputSpec::plain(p.addr, n.asset1()), OutputSpec::dummy(p.addr)};
        return req;
    }

    std::optional<Note> any_unspent(const std::string& owner) const {
        for (const auto& t : auditor_.notes()) {
            if (t.owner == owner && !t.note.is_sibling() && !t.note.has_debt() &&
                !ledger_.is_spent(t.nf)) {
                return t.note;
            }
        }
        return std::nullopt;
    }

    r1cs::Proof forged_proof() {
        r1cs::Proof p;
        const Digest32 d = rng_.next_digest();
        std::copy(d.bytes.begin(), d.bytes.end(), p.tag.begin());
        return p;
    }

    Outcome perform(const Step& step) {
        try {
            return perform_action(step);
        } catch (const LedgerRejected& e) {
            return Outcome{OutcomeKind::Reject, std::string(verdict_name(e.verdict)), {}};
        } catch (const r1cs::ProvingError& e) {
            std::string detail = "case=" + std::string(case_name(e.case_id));
            if (e.constraint) detail += " constraint=" + std::to_string(*e.constraint);
            return Outcome{OutcomeKind::Refuse, "proving", detail};
        } catch (const TransactionError& e) {
            return Outcome{OutcomeKind::Refuse, "build", e.what()};
        } catch (const ExchangeError& e) {
            return Outcome{OutcomeKind::Refuse, "guard", e.what()};
        }
    }

    Outcome perform_action(const Step& step) {
        const auto& w = step.words;
        const std::string& cmd = w[0];
        const bool force = w.back() == "force";

        if (cmd == "mint") {
            const Party& p = party(step, w[1]);
            const Color c = color(step, w[3]);
            if (c == kDummyColor) {
                return Outcome{OutcomeKind::Reject, std::string(verdict_name(
                                                        MintVerdict::ReservedColor)),
                               {}};
            }
            auto [tx, note] = build_mint(p.addr, c, amount(step, w[2]), rng_);
            const MintVerdict v = ledger_.apply_mint(tx);
            if (v != MintVerdict::Accept) {
                return Outcome{OutcomeKind::Reject, std::string(verdict_name(v)), {}};
            }
            auditor_.observe(note);
            return Outcome{OutcomeKind::Accept, {}, "cm=" + short_hex(tx.cm)};
        }

        if (cmd == "pay") {
            const Party& from = party(step, w[1]);
            const Party& to = party(step, w[2]);
            const Amount v = amount(step, w[3]);
            const Color c = color(step, w[4]);
            auto notes = pick_notes(auditor_.unspent(from.name, c, ledger_), v);
            Amount have = 0;
            for (const Note& n : notes) have += n.v1;
            if (notes.empty() || have < v) throw ExchangeError("insufficient funds");
            BuildRequest req;
            req.inputs = {InputSpend{notes[0], from.a_sk},
                          notes.size() == 2 ? InputSpend{notes[1], from.a_sk}
                                            : make_dummy_input(rng_)};
            req.outputs = {OutputSpec::plain(to.addr, Asset{c, v}),
                           have == v ? OutputSpec::dummy(from.addr)
                                     : OutputSpec::plain(from.addr, Asset{c, have - v})};
            req.intent = CaseId::DefaultPayment;
            return submitted(build_joinsplit(ledger_.params(), ledger_.tree(),
                                             ledger_.block_n(), req, rng_));
        }

        if (cmd == "initiate") {
            SessionPair& sp = session(step, w[1]);
            const Party& me = party(step, sp.initiator);
            auto funding = pick_notes(auditor_.unspent(me.name, sp.init.give().color, ledger_),
                                      sp.init.give().amount);
            auto rs = sp.init.initiate(ledger_, me, funding, rng_);
            auditor_.add_owner("escrow:" + w[1], *sp.init.shared_key());
            return accepted(rs);
        }

        if (cmd == "respond") {
            SessionPair& sp = session(step, w[1]);
            const Party& me = party(step, sp.counterparty);
            const Asset ask = sp.cp.ask();
            auto payment = pick_notes(auditor_.unspent(me.name, ask.color, ledger_), ask.amount);
            if (force) {
                if (!sp.init.primary_note()) throw ExchangeError("no offer on the ledger");
                if (payment.size() != 1) throw ExchangeError("forced respond needs one note");
                return submitted(build_response(ledger_, *sp.init.primary_note(),
                                                *sp.init.shared_key(),
                                                InputSpend{payment[0], me.a_sk}, me, rng_));
            }
            if (sp.cp.state() == SessionState::Created && !sp.cp.discover(ledger_)) {
                throw ExchangeError("offer not found on the ledger");
            }
            return accepted(sp.cp.respond(ledger_, me, payment, rng_));
        }

        if (cmd == "cancel") {
            SessionPair& sp = session(step, w[1]);
            const Party& me = party(step, sp.initiator);
            if (force) {
                if (!sp.init.primary_note()) throw ExchangeError("no offer on the ledger");
                return submitted(build_cancellation(ledger_, *sp.init.primary_note(),
                                                    *sp.init.shared_key(),
                                                    *sp.init.sibling_note(), me, rng_));
            }
            return accepted({sp.init.cancel(ledger_, me, rng_)});
        }

        if (cmd == "complete") {
            SessionPair& sp = session(step, w[1]);
            const Party& me = party(step, sp.initiator);
            std::optional<Amount> split;
            for (std::size_t i = 2; i < w.size(); ++i) {
                if (w[i] == "split" && i + 1 < w.size()) {
                    split = amount(step, w[++i]);
                } else if (w[i] != "force") {
                    fail_parse(step, "usage: complete S [split N] [force]");
                }
            }
            if (force) {
                if (!sp.init.primary_note()) throw ExchangeError("no offer on the ledger");
                return submitted(build_completion(ledger_, *sp.init.sibling_note(),
                                                  *sp.init.primary_note(), *sp.init.shared_key(),
                                                  me, split, rng_));
            }
            return accepted({sp.init.complete(ledger_, me, rng_, split)});
        }

        if (cmd == "replay") {
            if (!last_tx_) throw ExchangeError("nothing to replay");
            const Verdict v = ledger_.verify_and_append(*last_tx_);
            if (v == Verdict::Accept) throw std::logic_error("replayed transaction accepted");
            return Outcome{OutcomeKind::Reject, std::string(verdict_name(v)), {}};
        }

        if (cmd == "attempt_double_spend") {
            const Party& p = party(step, w[1]);
            std::optional<Note> target;
            for (const Note& n : auditor_.spent(p.name, ledger_)) {
                if (!n.is_sibling() && !n.has_debt()) target = n;
            }
            if (!target) throw ExchangeError("party has no spent note");
            return submitted(build_joinsplit(ledger_.params(), ledger_.tree(), ledger_.block_n(),
                                             self_payment(p, *target), rng_));
        }

        if (cmd == "attempt_nullifier_collision") {
            const Party& p = party(step, w[1]);
            auto n = any_unspent(p.name);
            if (!n) throw ExchangeError("party has no unspent note");
            BuildResult r = build_joinsplit(ledger_.params(), ledger_.tree(), ledger_.block_n(),
                                            self_payment(p, *n), rng_);
            r.tx.nf_old_2 = r.tx.nf_old_1;
            return submitted(r);
        }

        if (cmd == "attempt_sibling_alone") {
            SessionPair& sp = session(step, w[1]);
            if (w.size() == 3 && w[2] != "forged") {
                fail_parse(step, "usage: attempt_sibling_alone S [forged]");
            }
            if (!sp.init.sibling_note()) throw ExchangeError("session has no sibling");
            const Party& me = party(step, sp.initiator);
            const BuildRequest req = self_payment(me, *sp.init.sibling_note());
            if (w.size() == 3) {
                return submitted(build_joinsplit_with(
                    ledger_.params(), ledger_.tree(), ledger_.block_n(), req, rng_,
                    [this](const PublicInput&, const Witness&) { return forged_proof(); }));
            }
            return submitted(build_joinsplit(ledger_.params(), ledger_.tree(), ledger_.block_n(),
                                             req, rng_));
        }

        if (cmd == "attempt_forged_proof") {
            const Party& p = party(step, w[1]);
            auto n = any_unspent(p.name);
            if (!n) throw ExchangeError("party has no unspent note");
            return submitted(build_joinsplit_with(
                ledger_.params(), ledger_.tree(), ledger_.block_n(), self_payment(p, *n), rng_,
                [this](const PublicInput&, const Witness&) { return forged_proof(); }));
        }

        fail_parse(step, "unhandled command '" + cmd + "'");
    }

    bool audit(const Step& step) {
        std::vector<std::string> bad = auditor_.violations(ledger_);
        for (auto& [name, sp] : sessions_) {
            const SessionState i0 = sp.init.state();
            const SessionState c0 = sp.cp.state();
            sp.init.sync(ledger_);
            sp.cp.sync(ledger_);
            auto check = [&](SessionRole role, SessionState before, SessionState after,
                             std::string_view side) {
                const auto key = std::make_pair(name, role);
                auto it = last_state_.find(key);
                const SessionState prev = it == last_state_.end() ? SessionState::Created
                                                                  : it->second;
                if (!legal(role, prev, before) || !legal(role, before, after)) {
                    bad.push_back("session " + name + " " + std::string(side) +
                                  " moved illegally from " + std::string(state_name(prev)) +
                                  " to " + std::string(state_name(after)));
                }
                last_state_[key] = after;
            };
            check(SessionRole::Initiator, i0, sp.init.state(), "initiator");
            check(SessionRole::Counterparty, c0, sp.cp.state(), "counterparty");
        }
        if (bad.empty()) return true;
        for (const auto& b : bad) {
            res_.trace.push_back("!! invariant: " + b);
            res_.failures.push_back("invariant after " + where(step) + ": " + b);
        }
        res_.exit_code = exit_code::kInvariant;
        return false;
    }

    const Scenario& sc_;
    Rng rng_;
    Ledger ledger_;
    Auditor auditor_;
    std::map<std::string, Party> parties_;
    std::map<std::string, Color> colors_;
    std::map<std::string, SessionPair> sessions_;
    std::map<std::pair<std::string, SessionRole>, SessionState> last_state_;
    std::optional<JoinSplitTransaction> last_tx_;
    RunResult res_;
    std::size_t index_ = 0;

    std::string where(const Step& step) const {
        return "step #" + std::to_string(index_) + " (line " + std::to_string(step.line) + ")";
    }
};

}  // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& opts) {
    return Runner(scenario, opts).run();
}

}  // namespace omap
