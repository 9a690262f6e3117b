#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "omap/field.hpp"

namespace omap {

using Bytes = std::vector<std::uint8_t>;

/// Fixed 32-byte value produced by every hash and PRF in the protocol.
struct Digest32 {
    std::array<std::uint8_t, 32> bytes{};

    static Digest32 from_fe(const Fe& f) { return Digest32{f.to_bytes()}; }
    static Digest32 from_hex(std::string_view hex);

    /// Field image of the digest (value mod p).
    Fe to_fe() const { return Fe::from_bytes_reduce(bytes); }
    bool is_zero() const;
    std::string hex() const;

    friend auto operator<=>(const Digest32&, const Digest32&) = default;
};

struct SpendingKey {
    Digest32 a_sk;
    friend auto operator<=>(const SpendingKey&, const SpendingKey&) = default;
};

/// Raised when a primitive is called outside its domain (bad index, empty secret).
class PrimitiveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One-byte domain separators, one per hash role.
namespace tag {
inline constexpr std::uint8_t kAddr = 0x00;
inline constexpr std::uint8_t kNullifier = 0x01;
inline constexpr std::uint8_t kRho = 0x02;
inline constexpr std::uint8_t kSpendAuth = 0x03;
inline constexpr std::uint8_t kShared = 0x04;
inline constexpr std::uint8_t kCommit = 0x05;
inline constexpr std::uint8_t kMerkleNode = 0x06;
inline constexpr std::uint8_t kMerkleEmpty = 0x07;
inline constexpr std::uint8_t kEncKey = 0x08;
}  // namespace tag

// ---------------------------------------------------------------------------
// Byte-oriented hash (SHA-256)

Digest32 crh(std::span<const std::uint8_t> data);

/// h_sig = crh(nf_1 || nf_2 || pk_sig)
Digest32 compute_h_sig(const Digest32& nf1, const Digest32& nf2,
                       std::span<const std::uint8_t> pk_sig);

/// h_i = crh(tag_h || i || a_sk || h_sig), i in {1, 2}.
Digest32 prf_spend_auth(const SpendingKey& a_sk, int index, const Digest32& h_sig);

/// Key both exchange parties derive from their shared secret and the
/// initiating transaction's h_sig. The digest is reduced into the field so the
/// key bytes are the canonical encoding of the field value used in-circuit.
SpendingKey derive_shared_spending_key(std::span<const std::uint8_t> shared_secret,
                                       const Digest32& h_sig);

// ---------------------------------------------------------------------------
// Field-native statement hash H_c.
//
// MiMC-5 block cipher in Miyaguchi-Preneel chaining. Every value the JoinSplit
// circuit must reason about (addresses, nullifiers, nullifier seeds, note
// commitments, Merkle nodes) is an H_c output, so the native ledger and the
// constraint system agree bit for bit.

namespace mimc {
inline constexpr std::size_t kRounds = 110;
const std::array<Fe, kRounds>& round_constants();
/// E_k(x)
Fe encrypt(const Fe& key, Fe x);
/// E_h(m) + h + m
Fe compress(const Fe& h, const Fe& m);
Fe initial_state(std::uint8_t domain, std::size_t arity);
}  // namespace mimc

Fe hash_c(std::uint8_t domain, std::span<const Fe> elems);

Fe merkle_node_fe(const Fe& left, const Fe& right);
Fe merkle_empty_leaf_fe();

/// a_pk = H_c(tag_addr; a_sk, 0)
Digest32 prf_addr(const SpendingKey& a_sk);
/// nf = H_c(tag_nf; a_sk, rho)
Digest32 prf_nf(const SpendingKey& a_sk, const Digest32& rho);
/// rho_i = H_c(tag_rho; i, phi, h_sig), i in {1, 2}.
Digest32 prf_rho(const Digest32& phi, int index, const Digest32& h_sig);

// ---------------------------------------------------------------------------
// Addresses, signatures, note encryption

struct EncKeypair {
    std::array<std::uint8_t, 32> pk{};
    std::array<std::uint8_t, 32> sk{};
};

struct PaymentAddress {
    Digest32 a_pk;
    std::array<std::uint8_t, 32> enc_pk{};
    std::array<std::uint8_t, 32> enc_sk{};
};

PaymentAddress derive_address(const SpendingKey& a_sk);

inline constexpr std::size_t kSigPublicKeyBytes = 32;
inline constexpr std::size_t kSignatureBytes = 64;

struct SignatureKeypair {
    std::array<std::uint8_t, kSigPublicKeyBytes> pk_sig{};
    std::array<std::uint8_t, 64> sk_sig{};
};

/// Deterministic Ed25519 keypair from a 32-byte seed.
SignatureKeypair signature_keypair(const Digest32& seed);
std::array<std::uint8_t, kSignatureBytes> sign(const SignatureKeypair& kp,
                                               std::span<const std::uint8_t> m);
bool verify_sig(std::span<const std::uint8_t> pk_sig, std::span<const std::uint8_t> m,
                std::span<const std::uint8_t> sig);

/// Ciphertext overhead: ephemeral public key plus authenticator.
inline constexpr std::size_t kEncOverhead = 32 + 16;

/// Authenticated public-key encryption. The ephemeral key comes from `eph_seed`
/// so transaction bytes are reproducible under a fixed seed.
Bytes encrypt_note(std::span<const std::uint8_t, 32> enc_pk,
                   std::span<const std::uint8_t> plaintext, const Digest32& eph_seed);
/// Empty optional when the ciphertext was not addressed to `enc_sk`.
std::optional<Bytes> decrypt_note(std::span<const std::uint8_t, 32> enc_sk,
                                  std::span<const std::uint8_t> ciphertext);

/// HMAC-SHA-256.
Digest32 hmac_sha256(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t> m);

// ---------------------------------------------------------------------------

/// Deterministic generator for secrets, trapdoors and schedule choices.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    explicit Rng(const Digest32& seed) : key_(seed) {}

    Digest32 next_digest();
    /// Uniform canonical field element, encoded as a digest.
    Digest32 next_field_digest();
    std::uint64_t next_u64();
    /// Uniform in [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
    bool coin() { return (next_u64() & 1) != 0; }
    /// Independent child stream.
    Rng fork(std::uint64_t label);

private:
    Digest32 key_;
    std::uint64_t counter_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> data);

}  // namespace omap
