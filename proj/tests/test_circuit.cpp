#include <gtest/gtest.h>

#include <set>

#include "instances.hpp"
#include "omap/r1cs/backend.hpp"

namespace omap {
namespace {

using r1cs::JoinSplitCircuit;

const CaseId kCases[] = {CaseId::DefaultPayment,      CaseId::ExchangeInit,
                         CaseId::CancelByInitiator,   CaseId::CounterpartyResponse,
                         CaseId::CompleteByInitiator, CaseId::CompleteSecondScenario};

// rt + p: same field element, different bytes.
Digest32 alias(const Digest32& d) {
    Digest32 out = d;
    const auto& p = Fe::modulus();
    unsigned carry = 0;
    for (int i = 31; i >= 0; --i) {
        const unsigned limb_byte = (p[(31 - i) / 8] >> (8 * ((31 - i) % 8))) & 0xff;
        const unsigned s = out.bytes[i] + limb_byte + carry;
        out.bytes[i] = static_cast<std::uint8_t>(s);
        carry = s >> 8;
    }
    return out;
}

TEST(Circuit, ShapeIsFixed) {
    const JoinSplitCircuit c16(16);
    EXPECT_EQ(c16.cs().num_public(), 13u);
    EXPECT_EQ(c16.cs().num_constraints(), 37191u);
    const JoinSplitCircuit c4(4);
    EXPECT_LT(c4.cs().num_constraints(), c16.cs().num_constraints());
}

TEST(Circuit, WrongShapeWitnessIsRejected) {
    testing::InstanceFactory f(4, 40);
    auto in = f.make(CaseId::DefaultPayment);
    const JoinSplitCircuit c(4);
    in.w.path_1.siblings.pop_back();
    EXPECT_FALSE(c.synthesize(in.chi, in.w, CaseId::DefaultPayment, {}).has_value());
    EXPECT_EQ(c.first_unsatisfied(in.chi, in.w, CaseId::DefaultPayment, {}), 0u);
}

TEST(Kernels, SerialAndParallelAgree) {
    testing::InstanceFactory f(4, 41);
    const JoinSplitCircuit c(4);
    Rng rng(42);
    int unsat = 0;
    for (int i = 0; i < 60; ++i) {
        const CaseId id = kCases[i % 6];
        auto in = f.make(id);
        auto perm = satisfying_permutation(id, in.chi, in.w);
        ASSERT_TRUE(perm);
        auto w = c.synthesize(in.chi, in.w, id, *perm);
        ASSERT_TRUE(w);
        ASSERT_EQ(r1cs::first_unsatisfied_serial(c.cs(), *w), std::nullopt);
        ASSERT_EQ(r1cs::first_unsatisfied_parallel(c.cs(), *w), std::nullopt);
        for (int k = 0; k < 3; ++k) {
            auto bad = *w;
            const auto v = rng.uniform(1, bad.size() - 1);
            bad[v] += Fe::from_u64(rng.uniform(1, 5));
            const auto s = r1cs::first_unsatisfied_serial(c.cs(), bad);
            ASSERT_EQ(s, r1cs::first_unsatisfied_parallel(c.cs(), bad));
            unsat += s.has_value();
        }
    }
    EXPECT_GT(unsat, 150);
    r1cs::Assignment wrong(3, Fe::one());
    EXPECT_EQ(r1cs::first_unsatisfied_serial(c.cs(), wrong), 0u);
    EXPECT_EQ(r1cs::first_unsatisfied_parallel(c.cs(), wrong), 0u);
}

TEST(Backend, ProvesEveryCaseAtDefaultDepth) {
    auto params = r1cs::setup(16, Digest32{});
    testing::InstanceFactory f(16, 43);
    for (CaseId id : kCases) {
        auto in = f.make(id);
        SCOPED_TRACE(in.label);
        const auto proof = r1cs::prove(params.pk_joinsplit, in.chi, in.w);
        EXPECT_TRUE(r1cs::verify(params.vk_joinsplit, in.chi, proof));
    }
}

TEST(Backend, ProofsBindTheStatement) {
    auto params = r1cs::setup(4, Digest32{});
    testing::InstanceFactory f(4, 44);
    auto in = f.make(CaseId::CounterpartyResponse);
    const auto proof = r1cs::prove(params.pk_joinsplit, in.chi, in.w);
    ASSERT_TRUE(r1cs::verify(params.vk_joinsplit, in.chi, proof));
    auto edits = std::vector<std::function<void(PublicInput&)>>{
        [](PublicInput& c) { c.rt.bytes[31] ^= 1; },
        [](PublicInput& c) { c.nf_old_1.bytes[31] ^= 1; },
        [](PublicInput& c) { c.nf_old_2.bytes[31] ^= 1; },
        [](PublicInput& c) { c.cm_new_1.bytes[31] ^= 1; },
        [](PublicInput& c) { c.cm_new_2.bytes[31] ^= 1; },
        [](PublicInput& c) { c.v_pub_old.amount += 1; },
        [](PublicInput& c) { c.v_pub_new.color += 1; },
        [](PublicInput& c) { c.block_n += 1; },
        [](PublicInput& c) { c.h_sig.bytes[31] ^= 1; },
        [](PublicInput& c) { c.h_1.bytes[31] ^= 1; },
        [](PublicInput& c) { c.h_2.bytes[31] ^= 1; },
    };
    for (auto& edit : edits) {
        PublicInput chi = in.chi;
        edit(chi);
        EXPECT_FALSE(r1cs::verify(params.vk_joinsplit, chi, proof));
    }
    auto other = r1cs::setup(4, Digest32{{1}});
    EXPECT_FALSE(r1cs::verify(other.vk_joinsplit, in.chi, proof));
    r1cs::Proof forged = proof;
    forged.tag[0] ^= 1;
    EXPECT_FALSE(r1cs::verify(params.vk_joinsplit, in.chi, forged));
}

TEST(Backend, RefusesNonCanonicalAliases) {
    auto params = r1cs::setup(4, Digest32{});
    testing::InstanceFactory f(4, 45);
    auto in = f.make(CaseId::DefaultPayment);
    for (int field = 0; field < 5; ++field) {
        PublicInput chi = in.chi;
        Digest32* d[] = {&chi.rt, &chi.nf_old_1, &chi.nf_old_2, &chi.cm_new_1, &chi.cm_new_2};
        *d[field] = alias(*d[field]);
        ASSERT_EQ(d[field]->to_fe(), (*(&in.chi.rt + field)).to_fe());
        EXPECT_FALSE(has_canonical_digests(chi));
        // the plain predicate works on field images and cannot tell them apart
        EXPECT_TRUE(case_predicate(CaseId::DefaultPayment, chi, in.w));
        EXPECT_THROW(r1cs::prove(params.pk_joinsplit, chi, in.w), r1cs::ProvingError);
    }
}

// Every proof the authority ever issued is for a statement that has a
// satisfying witness under its case.
TEST(Backend, IssuedProofsAreSound) {
    auto params = r1cs::setup(4, Digest32{});
    params.pk_joinsplit.authority->set_recording(true);
    testing::InstanceFactory f(4, 46);
    Rng rng(47);
    std::set<std::array<std::uint8_t, kChiBytes>> proven;
    int refused = 0;
    for (int i = 0; i < 60; ++i) {
        const auto base = f.make(kCases[i % 6]);
        const auto in = i % 2 ? testing::mutate(base, rng) : base;
        const CaseId c = classify_case(in.w.n_old_1, in.w.n_old_2, in.w.n_new_1, in.w.n_new_2);
        try {
            const auto proof = r1cs::prove(params.pk_joinsplit, in.chi, in.w);
            ASSERT_NE(c, CaseId::Disallowed);
            ASSERT_TRUE(params.pk_joinsplit.circuit->accepts(in.chi, in.w, c)) << in.label;
            ASSERT_TRUE(case_predicate(c, in.chi, in.w)) << in.label;
            ASSERT_TRUE(r1cs::verify(params.vk_joinsplit, in.chi, proof));
            proven.insert(canonical_encoding(in.chi));
        } catch (const r1cs::ProvingError&) {
            ++refused;
            ASSERT_FALSE(c != CaseId::Disallowed && has_canonical_digests(in.chi) &&
                         case_predicate(c, in.chi, in.w))
                << in.label;
        }
    }
    EXPECT_GT(refused, 10);
    const auto records = params.pk_joinsplit.authority->records();
    EXPECT_EQ(records.size() + refused, 60u);
    for (const auto& r : records) EXPECT_TRUE(proven.contains(r.chi));
}

}  // namespace
}  // namespace omap
