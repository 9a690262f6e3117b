#include <gtest/gtest.h>

#include "omap/merkle.hpp"
#include "omap/r1cs/gadgets.hpp"

namespace omap::r1cs {
namespace {

struct Board {
    Protoboard pb;
    std::vector<Variable> inputs;

    explicit Board(std::size_t n_inputs) {
        for (std::size_t i = 0; i < n_inputs; ++i) inputs.push_back(pb.allocate_public());
    }
    Assignment witness(std::initializer_list<Fe> values) const {
        Assignment w = pb.cs().make_assignment();
        std::size_t i = 0;
        for (const Fe& v : values) w[inputs[i++].index] = v;
        pb.generate_witness(w);
        return w;
    }
    bool ok(const Assignment& w) const { return pb.cs().is_satisfied(w); }
};

Fe u(std::uint64_t v) { return Fe::from_u64(v); }

TEST(Gadgets, LeqExhaustive8Bit) {
    Board b(2);
    assert_leq_bits(b.pb, b.inputs[0], b.inputs[1], 8);
    ASSERT_EQ(b.pb.cs().num_constraints(), 9u);
    for (std::uint64_t x = 0; x < 256; ++x) {
        for (std::uint64_t y = 0; y < 256; ++y) {
            Assignment w = b.witness({u(x), u(y)});
            ASSERT_EQ(b.ok(w), x <= y) << x << " " << y;
            if (x > y) {
                // the wrapped difference is the natural forgery
                const std::uint64_t wrapped = (y - x) & 0xff;
                for (unsigned i = 0; i < 8; ++i) w[3 + i] = (wrapped >> i) & 1 ? Fe::one() : Fe::zero();
                ASSERT_FALSE(b.ok(w)) << x << " " << y;
            }
        }
    }
}

TEST(Gadgets, LessOrEqualExhaustive8Bit) {
    Board b(2);
    const Variable r = less_or_equal(b.pb, b.inputs[0], b.inputs[1], 8);
    for (std::uint64_t x = 0; x < 256; ++x) {
        for (std::uint64_t y = 0; y < 256; ++y) {
            Assignment w = b.witness({u(x), u(y)});
            ASSERT_TRUE(b.ok(w));
            ASSERT_EQ(w[r.index] == Fe::one(), x <= y) << x << " " << y;
            w[r.index] = Fe::one() - w[r.index];
            ASSERT_FALSE(b.ok(w));
        }
    }
}

TEST(Gadgets, DecomposeRange) {
    Board b(1);
    const Bits bits = decompose(b.pb, b.inputs[0], 16);
    for (std::uint64_t v : {0ULL, 1ULL, 0x1234ULL, 0xffffULL}) {
        const Assignment w = b.witness({u(v)});
        EXPECT_TRUE(b.ok(w));
        for (unsigned i = 0; i < 16; ++i) EXPECT_EQ(w[bits.bits[i].index] == Fe::one(), ((v >> i) & 1) != 0);
        EXPECT_EQ(bits.packed().evaluate(w), u(v));
    }
    EXPECT_FALSE(b.ok(b.witness({u(0x10000)})));
    EXPECT_FALSE(b.ok(b.witness({-Fe::one()})));
    Assignment w = b.witness({u(5)});
    w[bits.bits[0].index] = u(2);
    EXPECT_FALSE(b.ok(w));
}

TEST(Gadgets, IsZero) {
    Board b(1);
    const Variable z = is_zero(b.pb, b.inputs[0]);
    for (const Fe& v : {Fe::zero(), Fe::one(), u(77), -Fe::one()}) {
        Assignment w = b.witness({v});
        EXPECT_TRUE(b.ok(w));
        EXPECT_EQ(w[z.index] == Fe::one(), v.is_zero());
        w[z.index] = Fe::one() - w[z.index];
        EXPECT_FALSE(b.ok(w));
    }
}

TEST(Gadgets, MimcMatchesNative) {
    Board b(2);
    const Variable out = mimc_compress(b.pb, b.inputs[0], b.inputs[1]);
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const Fe h = rng.next_field_digest().to_fe();
        const Fe m = rng.next_field_digest().to_fe();
        Assignment w = b.witness({h, m});
        EXPECT_TRUE(b.ok(w));
        EXPECT_EQ(w[out.index], mimc::compress(h, m));
        w[out.index] += Fe::one();
        EXPECT_FALSE(b.ok(w));
    }
}

TEST(Gadgets, HashMatchesNative) {
    Rng rng(32);
    for (std::size_t arity = 0; arity <= 3; ++arity) {
        Board b(arity);
        std::vector<LC> ins(b.inputs.begin(), b.inputs.end());
        const Variable out = hash_c(b.pb, tag::kCommit, ins);
        std::vector<Fe> xs;
        for (std::size_t i = 0; i < arity; ++i) xs.push_back(rng.next_field_digest().to_fe());
        Assignment w = b.pb.cs().make_assignment();
        for (std::size_t i = 0; i < arity; ++i) w[b.inputs[i].index] = xs[i];
        b.pb.generate_witness(w);
        EXPECT_TRUE(b.ok(w));
        EXPECT_EQ(w[out.index], omap::hash_c(tag::kCommit, xs));
    }
}

TEST(Gadgets, MerkleRootMatchesTree) {
    constexpr std::size_t kDepth = 5;
    Rng rng(33);
    CombinedTree tree(kDepth);
    for (int i = 0; i < 19; ++i) tree.append(rng.next_field_digest(), LeafKind::Commitment);
    Board b(2);  // root, leaf
    const MerklePathVars vars = allocate_merkle_path(b.pb, kDepth);
    assert_merkle_path(b.pb, b.inputs[0], b.inputs[1], vars);
    for (std::uint64_t pos : {0u, 7u, 18u}) {
        const MerklePath p = tree.path(pos);
        Assignment w = b.pb.cs().make_assignment();
        w[b.inputs[0].index] = tree.root().to_fe();
        w[b.inputs[1].index] = tree.leaf_at(pos).to_fe();
        for (std::size_t l = 0; l < kDepth; ++l) {
            w[vars.siblings[l].index] = p.siblings[l].to_fe();
            w[vars.pos_bits[l].index] = (pos >> l) & 1 ? Fe::one() : Fe::zero();
        }
        b.pb.generate_witness(w);
        EXPECT_TRUE(b.ok(w));
        EXPECT_EQ(vars.position().evaluate(w), u(pos));
        w[vars.pos_bits[0].index] = Fe::one() - w[vars.pos_bits[0].index];
        b.pb.generate_witness(w);
        EXPECT_FALSE(b.ok(w));
    }
}

}  // namespace
}  // namespace omap::r1cs
