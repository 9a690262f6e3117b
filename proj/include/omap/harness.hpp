#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "omap/exchange.hpp"
#include "omap/ledger.hpp"

namespace omap {

// --- auditor -------------------------------------------------------------------

/// Test-side observer that knows every key and every plaintext note, and
/// checks the ledger against them.
class Auditor {
public:
    struct Tracked {
        Note note;
        Digest32 nf;
        std::string owner;
    };

    void add_owner(const std::string& name, const SpendingKey& a_sk);
    /// Registers the non-dummy outputs of an accepted transaction.
    void observe(const BuildResult& r);
    void observe(const Note& minted);

    /// Per color: minted + shielded_in - shielded_out = sum of unspent v1
    /// minus sum of unspent debts. Also nullifier uniqueness across entries.
    /// One message per violation; empty when everything holds.
    std::vector<std::string> violations(const Ledger& ledger) const;

    /// Unspent plain notes (no debt, not a sibling) of one owner and color,
    /// smallest value first.
    std::vector<Note> unspent(const std::string& owner, Color color, const Ledger& ledger) const;
    /// Notes of `owner` that have been spent, in observation order.
    std::vector<Note> spent(const std::string& owner, const Ledger& ledger) const;
    /// Sum of unspent plain notes per color for one owner.
    std::map<Color, Amount> holdings(const std::string& owner, const Ledger& ledger) const;

    const std::vector<Tracked>& notes() const { return notes_; }

private:
    void track(const Note& n);

    std::map<Digest32, std::pair<std::string, SpendingKey>> owners_;
    std::vector<Tracked> notes_;
};

// --- scenarios -----------------------------------------------------------------

class ScenarioParseError : public std::runtime_error {
public:
    ScenarioParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

enum class OutcomeKind { Accept, Reject, Refuse };

struct Expectation {
    OutcomeKind kind = OutcomeKind::Accept;
    /// Empty matches any reason.
    std::string reason;
};

struct Step {
    int line = 0;
    std::vector<std::string> words;
    std::optional<Expectation> expect;
};

struct Scenario {
    std::uint64_t seed = 0;
    std::size_t depth = 16;
    std::vector<Step> steps;
};

/// Line-oriented: one command per line, `#` starts a comment, an optional
/// `=> accept | reject [reason] | refuse [reason]` suffix. `seed` and `depth`
/// lines configure the run and may appear anywhere.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario(std::string_view text);

namespace exit_code {
inline constexpr int kPass = 0;
inline constexpr int kExpectation = 1;
inline constexpr int kInvariant = 2;
inline constexpr int kParse = 3;
}  // namespace exit_code

struct RunOptions {
    /// Overrides the scenario's depth.
    std::optional<std::size_t> depth;
};

struct RunResult {
    int exit_code = exit_code::kPass;
    /// One line per step plus a closing summary line.
    std::vector<std::string> trace;
    std::vector<std::string> failures;
    /// Ledger dump lines ("cm|nf pos hex").
    std::string ledger_dump;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

// --- randomized schedules ------------------------------------------------------

struct FuzzReport {
    std::uint64_t sessions = 0;
    std::uint64_t completed = 0;
    std::uint64_t cancelled = 0;
    std::uint64_t both_accepted = 0;
    std::uint64_t neither_reachable = 0;
    std::uint64_t invariant_violations = 0;
    std::uint64_t unfair = 0;
    std::uint64_t transactions = 0;
    /// Accepted offers; each is checked for adjacent primary and sibling.
    std::uint64_t offers = 0;
    /// Adversarial or late attempts by outcome, e.g. "reject duplicate-nullifier".
    std::map<std::string, std::uint64_t> attempts;
    /// First few violation messages, for diagnosis.
    std::vector<std::string> examples;

    bool ok() const {
        return both_accepted == 0 && neither_reachable == 0 && invariant_violations == 0 &&
               unfair == 0;
    }
    std::string to_string() const;
};

/// `count` independent sessions, each on its own ledger with randomized
/// assets, funding shapes, thresholds and respond/cancel timing around bt.
/// Sessions are sharded across OpenMP threads; the report depends only on
/// (count, seed, depth).
FuzzReport run_random_schedules(std::uint64_t count, std::uint64_t seed, std::size_t depth = 16);

}  // namespace omap
