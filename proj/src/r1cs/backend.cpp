#include "omap/r1cs/backend.hpp"

#include <sodium.h>

#include "omap/cases.hpp"

namespace omap::r1cs {

ProofAuthority::ProofAuthority(const Digest32& seed) {
    static const std::uint8_t kLabel[] = {'o', 'm', 'a', 'p', '.', 's', 'e', 't', 'u', 'p'};
    secret_ = hmac_sha256(seed.bytes, kLabel).bytes;
}

void ProofAuthority::set_recording(bool on) {
    std::lock_guard lock(mu_);
    recording_ = on;
}

std::vector<ProofAuthority::Record> ProofAuthority::records() const {
    std::lock_guard lock(mu_);
    return log_;
}

Proof ProofAuthority::issue(const PublicInput& chi) {
    const auto enc = canonical_encoding(chi);
    Proof p{hmac_sha256(secret_, enc).bytes};
    std::lock_guard lock(mu_);
    if (recording_) log_.push_back({enc, p});
    return p;
}

bool ProofAuthority::check(const PublicInput& chi, const Proof& proof) const {
    const auto expected = hmac_sha256(secret_, canonical_encoding(chi));
    return sodium_memcmp(expected.bytes.data(), proof.tag.data(), kProofBytes) == 0;
}

SetupParams setup(std::size_t depth, const Digest32& seed) {
    auto circuit = std::make_shared<const JoinSplitCircuit>(depth);
    auto authority = std::make_shared<ProofAuthority>(seed);
    return SetupParams{ProvingKey{circuit, authority}, VerifyingKey{authority}};
}

Proof prove(const ProvingKey& pk, const PublicInput& chi, const Witness& omega) {
    const CaseId c = classify_case(omega.n_old_1, omega.n_old_2, omega.n_new_1, omega.n_new_2);
    if (!has_canonical_digests(chi)) {
        throw ProvingError("public input has a non-canonical field encoding", c, std::nullopt);
    }
    const JoinSplitCircuit& circuit = *pk.circuit;

    auto perm = satisfying_permutation(c, chi, omega);
    const CaseId sel = c == CaseId::Disallowed ? CaseId::DefaultPayment : c;
    auto assignment = circuit.synthesize(chi, omega, sel, perm.value_or(Permutation{}));
    if (!assignment) {
        throw ProvingError("witness does not fit the circuit shape", c, std::nullopt);
    }
    auto bad = first_unsatisfied_parallel(circuit.cs(), *assignment);
    if (bad || !perm || c == CaseId::Disallowed) {
        throw ProvingError(std::string("unsatisfied statement for case ") +
                               std::string(case_name(c)),
                           c, bad);
    }
    return pk.authority->issue(chi);
}

bool verify(const VerifyingKey& vk, const PublicInput& chi, const Proof& proof) {
    return vk.authority->check(chi, proof);
}

}  // namespace omap::r1cs
