#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>

#include "omap/cases.hpp"
#include "omap/merkle.hpp"
#include "omap/r1cs/backend.hpp"
#include "omap/statement.hpp"

namespace omap {

inline constexpr std::size_t kMemoBytes = 64;
inline constexpr std::size_t kEncNoteBytes = kNoteBytes + kEncOverhead;

using EncNote = std::array<std::uint8_t, kEncNoteBytes>;
using Memo = std::array<std::uint8_t, kMemoBytes>;

/// Serialized field order is the declaration order below.
struct JoinSplitTransaction {
    Digest32 rt;
    Digest32 nf_old_1;
    Digest32 nf_old_2;
    Digest32 cm_new_1;
    Digest32 cm_new_2;
    Asset v_pub_old;
    Asset v_pub_new;
    Digest32 h_sig;
    Memo memo{};
    std::array<std::uint8_t, kSigPublicKeyBytes> pk_sig{};
    Digest32 h_1;
    Digest32 h_2;
    r1cs::Proof proof;
    EncNote enc_note_1{};
    EncNote enc_note_2{};
    std::array<std::uint8_t, kSignatureBytes> delta{};

    friend bool operator==(const JoinSplitTransaction&, const JoinSplitTransaction&) = default;
};

inline constexpr std::size_t kTxBytes = 5 * 32 + 2 * 12 + 32 + kMemoBytes + kSigPublicKeyBytes +
                                        2 * 32 + r1cs::kProofBytes + 2 * kEncNoteBytes +
                                        kSignatureBytes;

using TxBytes = std::array<std::uint8_t, kTxBytes>;

TxBytes serialize_tx(const JoinSplitTransaction& tx);
/// Throws TransactionError on wrong length.
JoinSplitTransaction deserialize_tx(std::span<const std::uint8_t> bytes);

/// chi as the ledger sees it at height `block_n`.
PublicInput statement_of(const JoinSplitTransaction& tx, Height block_n);

/// Message covered by delta: block_n followed by every serialized field
/// except delta itself.
Bytes signing_message(const JoinSplitTransaction& tx, Height block_n);

struct MintTransaction {
    Digest32 cm;
    Color color = 0;
    Amount value = 0;
    /// Commitment chaining state over the hidden fields, so the ledger can
    /// check that cm opens to (color, value) without seeing the owner.
    Digest32 inner;
    EncNote enc_note{};
};

class TransactionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One input of a JoinSplit. Dummy inputs (color 0) need no tree position.
struct InputSpend {
    Note note;
    SpendingKey a_sk;
};

/// Output owner: a fixed address, or the key both exchange parties derive
/// from a shared secret and the transaction's own h_sig.
struct Recipient {
    PaymentAddress addr;
    Bytes shared_secret;

    static Recipient to(const PaymentAddress& a) { return Recipient{a, {}}; }
    static Recipient shared(Bytes secret) { return Recipient{{}, std::move(secret)}; }
    PaymentAddress resolve(const Digest32& h_sig) const;
};

/// Output template; rho, gamma and pair_tag are filled in by the builder.
struct OutputSpec {
    Recipient to;
    std::uint8_t s = 0;
    Color color1 = 0;
    Amount v1 = 0;
    Color color2 = 0;
    Amount v2 = 0;
    Height bt = 0;

    static OutputSpec plain(const PaymentAddress& a, Asset asset) {
        return OutputSpec{Recipient::to(a), 0, asset.color, asset.amount, 0, 0, 0};
    }
    static OutputSpec dummy(const PaymentAddress& a) { return OutputSpec{Recipient::to(a)}; }
};

/// Proof that a spent sibling's paired primary is already spent: the primary
/// note and the key that owns it. Positions and paths come from the tree.
struct SiblingEvidence {
    Note primary;
    SpendingKey a_sk;
};

struct StatementParts {
    std::array<InputSpend, 2> inputs;
    std::array<Note, 2> outputs;
    Digest32 phi;
    Digest32 h_sig;
    Digest32 h_1;
    Digest32 h_2;
    Asset v_pub_old;
    Asset v_pub_new;
    std::optional<SiblingEvidence> evidence;
};

/// Uniform-shape (chi, omega). Live inputs must be in the tree; evidence, when
/// given, must have both its commitment and nullifier in the tree. Throws
/// TransactionError otherwise.
std::pair<PublicInput, Witness> assemble_statement(const CombinedTree& tree, Height block_n,
                                                   const StatementParts& parts);

struct BuildRequest {
    std::array<InputSpend, 2> inputs;
    std::array<OutputSpec, 2> outputs;
    Asset v_pub_old;
    Asset v_pub_new;
    Memo memo{};
    std::optional<SiblingEvidence> evidence;
    /// When set, the notes must classify to this case.
    std::optional<CaseId> intent;
};

struct BuildResult {
    JoinSplitTransaction tx;
    Note n_new_1;
    Note n_new_2;
    CaseId case_id;
};

/// Nullifiers, signing key, h_sig, output notes, spend authorizations,
/// encryption, statement, proof and signature, in that order. Throws
/// TransactionError for shape problems and r1cs::ProvingError on refusal.
BuildResult build_joinsplit(const r1cs::SetupParams& params, const CombinedTree& tree,
                            Height block_n, const BuildRequest& req, Rng& rng);

using ProveFn = std::function<r1cs::Proof(const PublicInput&, const Witness&)>;

/// As build_joinsplit with the proof step replaced, e.g. by a forger.
BuildResult build_joinsplit_with(const r1cs::SetupParams& params, const CombinedTree& tree,
                                 Height block_n, const BuildRequest& req, Rng& rng,
                                 const ProveFn& prove_fn);

/// Dummy input owned by a fresh random key.
InputSpend make_dummy_input(Rng& rng);

/// Throws TransactionError for color 0.
std::pair<MintTransaction, Note> build_mint(const PaymentAddress& recipient, Color color,
                                            Amount value, Rng& rng);

/// Scalar packing of a freshly minted note (no debt, s = 0, bt = 0).
Fe mint_scalars(Color color, Amount value);

}  // namespace omap
