#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "omap/r1cs/joinsplit.hpp"
#include "omap/statement.hpp"

namespace omap::r1cs {

inline constexpr std::size_t kProofBytes = 32;

struct Proof {
    std::array<std::uint8_t, kProofBytes> tag{};
    friend bool operator==(const Proof&, const Proof&) = default;
};

/// Prover refusal. `constraint` is the first unsatisfied constraint when the
/// witness reached the circuit; it is diagnostic only.
class ProvingError : public std::runtime_error {
public:
    ProvingError(const std::string& what, CaseId c, std::optional<std::size_t> constraint)
        : std::runtime_error(what), case_id(c), constraint(constraint) {}
    CaseId case_id;
    std::optional<std::size_t> constraint;
};

struct ProvingKey;
Proof prove(const ProvingKey& pk, const PublicInput& chi, const Witness& omega);

/// Holder of the setup secret. The secret never leaves this object: proofs
/// are issued through prove() and checked through verify(). With recording on,
/// every issued (chi, proof) pair is logged for soundness tests.
class ProofAuthority {
public:
    struct Record {
        std::array<std::uint8_t, kChiBytes> chi;
        Proof proof;
    };

    explicit ProofAuthority(const Digest32& seed);

    void set_recording(bool on);
    std::vector<Record> records() const;
    bool check(const PublicInput& chi, const Proof& proof) const;

private:
    friend Proof prove(const ProvingKey&, const PublicInput&, const Witness&);
    Proof issue(const PublicInput& chi);

    std::array<std::uint8_t, 32> secret_{};
    mutable std::mutex mu_;
    bool recording_ = false;
    std::vector<Record> log_;
};

struct ProvingKey {
    std::shared_ptr<const JoinSplitCircuit> circuit;
    std::shared_ptr<ProofAuthority> authority;
};

struct VerifyingKey {
    std::shared_ptr<const ProofAuthority> authority;
};

/// Output of setup: the matched proving/verifying pair. Encryption and
/// signature schemes take no parameters beyond their keys.
struct SetupParams {
    ProvingKey pk_joinsplit;
    VerifyingKey vk_joinsplit;
    std::size_t depth() const { return pk_joinsplit.circuit->depth(); }
};

SetupParams setup(std::size_t depth, const Digest32& seed);

/// Classifies omega, finds a satisfying note permutation for that case with
/// the plain predicate, synthesizes the full assignment and checks every
/// constraint. Issues MAC(secret, canonical_encoding(chi)) only when all hold.
/// Throws ProvingError otherwise.
Proof prove(const ProvingKey& pk, const PublicInput& chi, const Witness& omega);

bool verify(const VerifyingKey& vk, const PublicInput& chi, const Proof& proof);

}  // namespace omap::r1cs
