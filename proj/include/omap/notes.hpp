#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "omap/primitives.hpp"

namespace omap {

using Color = std::uint32_t;
using Amount = std::uint64_t;
using Height = std::uint32_t;

/// Color 0 is reserved for dummy notes.
inline constexpr Color kDummyColor = 0;

struct Asset {
    Color color = 0;
    Amount amount = 0;
    friend bool operator==(const Asset&, const Asset&) = default;
};

/// Multi-asset private note.
///
/// `color1/v1` is the asset the note carries; `color2/v2` is a debt that must
/// be cancelled by co-spending a matching note. A sibling (`s == 1`) carries no
/// debt and can only be spent together with, or after, its paired primary.
struct Note {
    Digest32 a_pk;
    std::uint8_t s = 0;
    Color color1 = 0;
    Amount v1 = 0;
    Color color2 = 0;
    Amount v2 = 0;
    Height bt = 0;
    Digest32 rho;
    Digest32 gamma;
    Digest32 pair_tag;
    Digest32 cm;

    bool is_dummy() const { return color1 == kDummyColor; }
    bool is_sibling() const { return s == 1; }
    bool has_debt() const { return v2 != 0; }
    Asset asset1() const { return Asset{color1, v1}; }

    friend bool operator==(const Note&, const Note&) = default;
};

struct NotePair {
    Note primary;
    Note sibling;
};

struct Nullifier {
    Digest32 nf;
    friend auto operator<=>(const Nullifier&, const Nullifier&) = default;
};

class NoteError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Content bytes followed by zero padding up to kNoteBytes.
inline constexpr std::size_t kNoteContentBytes = 157;
inline constexpr std::size_t kNoteBytes = 165;

using NoteBytes = std::array<std::uint8_t, kNoteBytes>;

NoteBytes serialize_note(const Note& n);
/// Inverse of serialize_note; `cm` of the result is recomputed. Throws
/// NoteError on wrong length, nonzero padding, or a flag byte other than 0/1.
Note deserialize_note(std::span<const std::uint8_t> bytes);

/// Empty when the field-level invariants hold, otherwise a description.
std::optional<std::string> note_invariant_violation(const Note& n);

/// s | color1 << 1 | v1 << 33 | color2 << 97 | v2 << 129 | bt << 193
Fe pack_note_scalars(const Note& n);

/// Chaining state after absorbing the hidden fields (a_pk, rho, gamma,
/// pair_tag). Mint transactions publish it so the ledger can check that the
/// commitment opens to the public color and value.
Fe commitment_inner(const Note& n);
Digest32 commit_from_inner(const Fe& inner, const Fe& packed);

/// H_c(tag_cm; a_pk, rho, gamma, pair_tag, packed). Throws NoteError if the
/// note violates its invariants.
Digest32 commit_note(const Note& n);

/// Fills in `cm` after validating the note.
Note seal_note(Note n);

/// Zero-valued note of color 0 owned by `a_pk`.
Note make_dummy_note(const Digest32& a_pk, const Digest32& rho, const Digest32& gamma);

Note make_plain_note(const Digest32& a_pk, Asset asset, const Digest32& rho,
                     const Digest32& gamma, const Digest32& pair_tag);

/// Primary (owned by the shared key) carries `give` with `ask` as debt; the
/// sibling (owned by the initiator) carries `ask`. Both share bt and the
/// pair tag h_sig; rho_i = prf_rho(phi, i, h_sig).
NotePair make_exchange_pair(const Digest32& a_pk_shared, const Digest32& a_pk_self, Asset give,
                            Asset ask, Height bt, const Digest32& h_sig, const Digest32& phi,
                            const Digest32& gamma_primary, const Digest32& gamma_sibling);

/// Field-wise check of the primary/sibling pairing rules.
bool is_valid_pair(const NotePair& pair);

/// prf_nf(a_sk, n.rho); throws NoteError when a_sk does not own the note.
Nullifier nullifier_of(const Note& n, const SpendingKey& a_sk);

}  // namespace omap
