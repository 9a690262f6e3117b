#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "omap/merkle.hpp"
#include "omap/notes.hpp"

namespace omap {

/// Spending cases. The numeric value doubles as the circuit selector index.
enum class CaseId : std::uint8_t {
    DefaultPayment = 0,
    ExchangeInit = 1,
    CancelByInitiator = 2,
    CounterpartyResponse = 3,
    CompleteByInitiator = 4,
    CompleteSecondScenario = 5,
    Disallowed = 6,
};

inline constexpr std::size_t kNumCases = 6;

std::string_view case_name(CaseId c);

/// Position assignment that maps the physical notes onto the canonical roles
/// used by the case conditions: inputs (A, B) and outputs (P, Q).
struct Permutation {
    bool swap_in = false;
    bool swap_out = false;
};

inline constexpr Permutation kAllPermutations[4] = {
    {false, false}, {true, false}, {false, true}, {true, true}};

/// Public statement chi.
struct PublicInput {
    Digest32 rt;
    Digest32 nf_old_1;
    Digest32 nf_old_2;
    Digest32 cm_new_1;
    Digest32 cm_new_2;
    Asset v_pub_old;
    Asset v_pub_new;
    Height block_n = 0;
    Digest32 h_sig;
    Digest32 h_1;
    Digest32 h_2;

    friend bool operator==(const PublicInput&, const PublicInput&) = default;
};

inline constexpr std::size_t kChiBytes = 5 * 32 + 2 * 12 + 4 + 3 * 32;

/// Fields in declaration order; digests raw, colors and heights 4-byte and
/// amounts 8-byte big-endian.
std::array<std::uint8_t, kChiBytes> canonical_encoding(const PublicInput& chi);

/// True when rt, the nullifiers and the commitments are canonical field
/// encodings. Those values are compared in-circuit as field elements, so a
/// non-canonical alias must never be accepted.
bool has_canonical_digests(const PublicInput& chi);

/// Private witness omega. The sibling-spend evidence (path_3 .. nf_old_3) is
/// zero-filled when no input is a sibling, so the shape never varies.
struct Witness {
    MerklePath path_1;
    MerklePath path_2;
    Note n_old_1;
    Note n_old_2;
    SpendingKey a_sk_1;
    SpendingKey a_sk_2;
    Digest32 phi;
    bool dummy_1 = false;
    bool dummy_2 = false;
    Note n_new_1;
    Note n_new_2;
    MerklePath path_3;
    Note n_old_3;
    SpendingKey a_sk_3;
    MerklePath path_4;
    Digest32 nf_old_3;
};

/// All-zero path of the given depth.
MerklePath zero_path(std::size_t depth);

}  // namespace omap
