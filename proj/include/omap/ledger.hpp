#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "omap/merkle.hpp"
#include "omap/r1cs/backend.hpp"
#include "omap/transactions.hpp"

namespace omap {

enum class Verdict : std::uint8_t {
    Accept,
    DuplicateNullifier,
    UnknownRoot,
    HsigMismatch,
    InvalidProof,
    InvalidSignature,
};

enum class MintVerdict : std::uint8_t { Accept, ReservedColor, BadCommitment, TreeFull };

std::string_view verdict_name(Verdict v);
std::string_view verdict_name(MintVerdict v);

/// Public value flows of one color.
struct Supply {
    Amount minted = 0;
    Amount shielded_in = 0;   // v_pub_old of accepted transactions
    Amount shielded_out = 0;  // v_pub_new of accepted transactions
};

struct LedgerEntry {
    Height height = 0;
    std::variant<MintTransaction, JoinSplitTransaction> tx;
    /// Tree position of the first leaf the entry appended.
    std::uint64_t first_pos = 0;
};

struct ReceivedNote {
    Note note;
    std::uint64_t pos = 0;
    bool spendable = false;
};

/// Append-only single-node ledger.
class Ledger {
public:
    explicit Ledger(r1cs::SetupParams params);

    const r1cs::SetupParams& params() const { return params_; }
    const CombinedTree& tree() const { return tree_; }
    Height block_n() const { return block_n_; }
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    const std::set<Digest32>& nullifiers() const { return nullifiers_; }
    const std::map<Color, Supply>& supply() const { return supply_; }
    bool is_spent(const Digest32& nf) const { return nullifiers_.contains(nf); }

    /// All checks without mutating state. Nullifier freshness is checked
    /// first, so a replay is reported as a duplicate even when its proof has
    /// gone stale.
    Verdict check(const JoinSplitTransaction& tx) const;

    /// On accept appends cm_1, cm_2, nf_1, nf_2 and records the transaction.
    Verdict verify_and_append(const JoinSplitTransaction& tx);

    MintVerdict apply_mint(const MintTransaction& tx);

    /// Throws std::invalid_argument for n = 0.
    Height advance_block(Height n = 1);

    /// Notes whose ciphertext opens under `addr.enc_sk` and that belong to
    /// a_sk. Spendable means the nullifier is not yet on the ledger.
    std::vector<ReceivedNote> scan_receive(const PaymentAddress& addr,
                                           const SpendingKey& a_sk) const;

    /// Position of an accepted nullifier and its path against the current root.
    std::optional<std::pair<std::uint64_t, MerklePath>> scan_nullifier(const Digest32& nf) const;

    /// One line per leaf: "cm|nf <pos> <hex>".
    void dump(std::ostream& os) const;

private:
    r1cs::SetupParams params_;
    CombinedTree tree_;
    std::set<Digest32> nullifiers_;
    std::vector<LedgerEntry> entries_;
    std::map<Color, Supply> supply_;
    Height block_n_ = 0;
};

/// Opens one ciphertext and checks it against the commitment it should carry.
std::optional<Note> open_note(const PaymentAddress& addr, std::span<const std::uint8_t> ct,
                              const Digest32& cm);

}  // namespace omap
