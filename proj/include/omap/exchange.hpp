#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "omap/ledger.hpp"
#include "omap/transactions.hpp"

namespace omap {

/// A wallet: one spending key and the address derived from it.
struct Party {
    std::string name;
    SpendingKey a_sk;
    PaymentAddress addr;

    static Party create(std::string name, const SpendingKey& a_sk);
};

class ExchangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A built transaction the ledger did not accept.
class LedgerRejected : public ExchangeError {
public:
    explicit LedgerRejected(Verdict v)
        : ExchangeError("ledger rejected transaction: " + std::string(verdict_name(v))),
          verdict(v) {}
    Verdict verdict;
};

// --- single-transaction builders ---------------------------------------------
// No session bookkeeping; they only assemble and prove. Sessions call them,
// and adversarial tests call them directly to bypass session guards.

/// Case 1: funding notes (dummy allowed) into a primary owned by the shared
/// key and a sibling owned by `self`. n_new_1 is the primary.
BuildResult build_offer(const Ledger& ledger, const std::array<InputSpend, 2>& funding,
                        const Party& self, std::span<const std::uint8_t> shared_secret,
                        Asset give, Asset ask, Height bt, Rng& rng);

/// Case 3: the counterparty pays the primary's debt with `payment` and takes
/// the primary's asset; change goes back to the counterparty.
BuildResult build_response(const Ledger& ledger, const Note& primary,
                           const SpendingKey& shared_key, const InputSpend& payment,
                           const Party& self, Rng& rng);

/// Case 2: primary and sibling spent together; the give asset returns to
/// `self` next to a zero-value dummy.
BuildResult build_cancellation(const Ledger& ledger, const Note& primary,
                               const SpendingKey& shared_key, const Note& sibling,
                               const Party& self, Rng& rng);

/// Case 4: the sibling is spent with evidence that its primary is spent. The
/// ask asset goes to `self`, split as (split, rest) when `split` is given,
/// otherwise as one note next to a zero-value dummy.
BuildResult build_completion(const Ledger& ledger, const Note& sibling, const Note& primary,
                             const SpendingKey& shared_key, const Party& self,
                             std::optional<Amount> split, Rng& rng);

/// Case 0 payment from `self` to itself: outputs `first` and the remainder.
BuildResult build_self_split(const Ledger& ledger, const std::array<InputSpend, 2>& inputs,
                             const Party& self, Asset first, Rng& rng);

// --- session -------------------------------------------------------------------

enum class SessionRole { Initiator, Counterparty };
enum class SessionState { Created, Offered, Responded, Cancelled, Completed, Aborted };

std::string_view state_name(SessionState s);

enum class PollStatus { Pending, Responded, Expired };

struct PollResult {
    PollStatus status = PollStatus::Pending;
    /// Position and path of the primary's nullifier when Responded.
    std::optional<std::pair<std::uint64_t, MerklePath>> evidence;
};

/// One side of a two-party exchange. The shared secret is agreed out of band.
///
/// Initiator: Created -> Offered -> (Responded -> Completed | Cancelled).
/// Counterparty: Created -> Offered (offer found) -> Responded, or Cancelled
/// when the initiator reclaims first.
class ExchangeSession {
public:
    ExchangeSession(SessionRole role, Asset give, Asset ask, Height bt, Bytes shared_secret);

    SessionRole role() const { return role_; }
    SessionState state() const { return state_; }
    Asset give() const { return give_; }
    Asset ask() const { return ask_; }
    Height bt() const { return bt_; }
    const std::optional<Note>& primary_note() const { return primary_; }
    const std::optional<Note>& sibling_note() const { return sibling_; }
    const std::optional<SpendingKey>& shared_key() const { return shared_key_; }
    const std::optional<Digest32>& primary_nf_expected() const { return primary_nf_; }

    /// Initiator. Funding is one or two notes of the give color owned by `me`;
    /// a surplus is first split off with a self-payment. Returns every
    /// appended transaction, the offer last.
    std::vector<BuildResult> initiate(Ledger& ledger, const Party& me,
                                      std::span<const Note> funding, Rng& rng);

    /// Counterparty. Looks for the offer among ledger transactions by
    /// deriving the shared key from each h_sig.
    bool discover(const Ledger& ledger);

    /// Counterparty. Payment is one or two notes of the ask color; two notes
    /// are merged first. Returns every appended transaction, the response last.
    std::vector<BuildResult> respond(Ledger& ledger, const Party& me,
                                     std::span<const Note> payment, Rng& rng);

    /// Initiator, after bt, while the primary is unspent.
    BuildResult cancel(Ledger& ledger, const Party& me, Rng& rng);

    PollResult poll_counterparty(const Ledger& ledger) const;

    /// Initiator, after bt, once the counterparty has responded.
    BuildResult complete(Ledger& ledger, const Party& me, Rng& rng,
                         std::optional<Amount> split = std::nullopt);

    /// Reconciles the state with what the ledger shows: a primary spent next
    /// to its sibling was cancelled, a primary spent alone was answered.
    void sync(const Ledger& ledger);

private:
    void require(SessionRole r, std::initializer_list<SessionState> allowed,
                 std::string_view op) const;
    static Verdict append(Ledger& ledger, const BuildResult& r);

    SessionRole role_;
    Asset give_;
    Asset ask_;
    Height bt_;
    Bytes secret_;
    SessionState state_ = SessionState::Created;
    std::optional<Note> primary_;
    std::optional<Note> sibling_;
    std::optional<SpendingKey> shared_key_;
    std::optional<Digest32> primary_nf_;
    std::optional<Digest32> sibling_nf_;
};

}  // namespace omap
