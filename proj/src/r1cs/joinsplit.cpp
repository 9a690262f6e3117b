#include "omap/r1cs/joinsplit.hpp"

#include <array>

#include "omap/r1cs/gadgets.hpp"

namespace omap::r1cs {
namespace {

struct NoteVars {
    Variable a_pk, rho, gamma, pair_tag;
    Variable s, c1, v1, c2, v2, bt;
    Variable zc1, zc2, zv2;
    Variable cm;
};

// Range checks, well-formedness rules and the commitment of one note.
NoteVars note_gadget(Protoboard& pb) {
    NoteVars n;
    n.a_pk = pb.allocate_aux();
    n.rho = pb.allocate_aux();
    n.gamma = pb.allocate_aux();
    n.pair_tag = pb.allocate_aux();
    n.s = pb.allocate_aux();
    n.c1 = pb.allocate_aux();
    n.v1 = pb.allocate_aux();
    n.c2 = pb.allocate_aux();
    n.v2 = pb.allocate_aux();
    n.bt = pb.allocate_aux();

    auto& cs = pb.cs();
    const LC one = LC::constant(1);
    assert_boolean(cs, n.s);
    assert_bits(pb, n.c1, 32);
    assert_bits(pb, n.v1, 64);
    assert_bits(pb, n.c2, 32);
    assert_bits(pb, n.v2, 64);
    assert_bits(pb, n.bt, 32);

    n.zc1 = is_zero(pb, n.c1);
    n.zc2 = is_zero(pb, n.c2);
    n.zv2 = is_zero(pb, n.v2);
    assert_equal(cs, n.zc2, n.zv2);
    assert_zero_when(cs, n.s, one - LC(n.zc2));
    assert_zero_when(cs, n.zc1, n.v1);
    assert_zero_when(cs, n.zc1, one - LC(n.zc2));
    assert_zero_when(cs, n.zc1, n.s);

    LC packed = LC(n.s) + LC(n.c1) * pow2(1) + LC(n.v1) * pow2(33) + LC(n.c2) * pow2(97) +
                LC(n.v2) * pow2(129) + LC(n.bt) * pow2(193);
    const LC in[5] = {n.a_pk, n.rho, n.gamma, n.pair_tag, packed};
    n.cm = hash_c(pb, tag::kCommit, in);
    return n;
}

void assign_note(Assignment& w, const NoteVars& v, const Note& n) {
    w[v.a_pk.index] = n.a_pk.to_fe();
    w[v.rho.index] = n.rho.to_fe();
    w[v.gamma.index] = n.gamma.to_fe();
    w[v.pair_tag.index] = n.pair_tag.to_fe();
    w[v.s.index] = Fe::from_u64(n.s);
    w[v.c1.index] = Fe::from_u64(n.color1);
    w[v.v1.index] = Fe::from_u64(n.v1);
    w[v.c2.index] = Fe::from_u64(n.color2);
    w[v.v2.index] = Fe::from_u64(n.v2);
    w[v.bt.index] = Fe::from_u64(n.bt);
}

bool assign_path(Assignment& w, const MerklePathVars& v, const MerklePath& p) {
    const std::size_t depth = v.siblings.size();
    if (p.siblings.size() != depth) return false;
    if (depth < 64 && (p.pos >> depth) != 0) return false;
    for (std::size_t l = 0; l < depth; ++l) {
        w[v.siblings[l].index] = p.siblings[l].to_fe();
        w[v.pos_bits[l].index] = ((p.pos >> l) & 1) ? Fe::one() : Fe::zero();
    }
    return true;
}

Fe bit_fe(bool b) { return b ? Fe::one() : Fe::zero(); }

}  // namespace

struct JoinSplitCircuit::Impl {
    std::size_t depth;
    Protoboard pb;

    // public inputs
    Variable rt, nf1, nf2, cm1, cm2, po_color, po_amount, pn_color, pn_amount, block_n, h_sig,
        h1, h2;

    // witness inputs
    NoteVars in1, in2, out1, out2, n3;
    Variable a_sk1, a_sk2, a_sk3, phi, d1, d2, nf_old_3;
    MerklePathVars path1, path2, path3, path4;
    std::array<Variable, kNumCases> sel;
    Variable swap_in, swap_out, k;

    explicit Impl(std::size_t d) : depth(d) { build(); }

    void build();
    Fe free_color(const PublicInput& chi, const Witness& omega, CaseId c, Permutation perm) const;
};

void JoinSplitCircuit::Impl::build() {
    auto& cs = pb.cs();
    const LC one = LC::constant(1);
    auto when = [&cs](const LC& gate, const LC& expr) { assert_zero_when(cs, gate, expr); };

    rt = pb.allocate_public();
    nf1 = pb.allocate_public();
    nf2 = pb.allocate_public();
    cm1 = pb.allocate_public();
    cm2 = pb.allocate_public();
    po_color = pb.allocate_public();
    po_amount = pb.allocate_public();
    pn_color = pb.allocate_public();
    pn_amount = pb.allocate_public();
    block_n = pb.allocate_public();
    h_sig = pb.allocate_public();
    h1 = pb.allocate_public();
    h2 = pb.allocate_public();

    a_sk1 = pb.allocate_aux();
    a_sk2 = pb.allocate_aux();
    a_sk3 = pb.allocate_aux();
    phi = pb.allocate_aux();
    d1 = pb.allocate_aux();
    d2 = pb.allocate_aux();
    nf_old_3 = pb.allocate_aux();
    for (auto& s : sel) s = pb.allocate_aux();
    swap_in = pb.allocate_aux();
    swap_out = pb.allocate_aux();
    k = pb.allocate_aux();
    path1 = allocate_merkle_path(pb, depth);
    path2 = allocate_merkle_path(pb, depth);
    path3 = allocate_merkle_path(pb, depth);
    path4 = allocate_merkle_path(pb, depth);

    assert_bits(pb, po_color, 32);
    assert_bits(pb, po_amount, 64);
    assert_bits(pb, pn_color, 32);
    assert_bits(pb, pn_amount, 64);
    assert_bits(pb, block_n, 32);

    in1 = note_gadget(pb);
    in2 = note_gadget(pb);
    out1 = note_gadget(pb);
    out2 = note_gadget(pb);
    n3 = note_gadget(pb);

    // --- common checks -----------------------------------------------------
    const Variable a_sk[2] = {a_sk1, a_sk2};
    const NoteVars* ins[2] = {&in1, &in2};
    const Variable dummy[2] = {d1, d2};
    const Variable nf_pub[2] = {nf1, nf2};
    const MerklePathVars* paths[2] = {&path1, &path2};
    for (int i = 0; i < 2; ++i) {
        const NoteVars& n = *ins[i];
        assert_boolean(cs, dummy[i]);
        assert_equal(cs, dummy[i], n.zc1);
        const LC live = one - LC(dummy[i]);

        const LC nf_in[2] = {a_sk[i], n.rho};
        assert_hash_preimage(pb, nf_pub[i], tag::kNullifier, nf_in);

        const LC addr_in[2] = {a_sk[i], LC{}};
        Variable addr = hash_c(pb, tag::kAddr, addr_in);
        when(live, LC(addr) - n.a_pk);

        LC root = merkle_root(pb, n.cm, *paths[i]);
        when(live, root - rt);
    }

    const NoteVars* outs[2] = {&out1, &out2};
    const Variable cm_pub[2] = {cm1, cm2};
    for (int j = 0; j < 2; ++j) {
        const NoteVars& n = *outs[j];
        assert_equal(cs, n.pair_tag, h_sig);
        const LC rho_in[3] = {LC::constant(static_cast<std::uint64_t>(j + 1)), phi, h_sig};
        assert_hash_preimage(pb, n.rho, tag::kRho, rho_in);
        assert_equal(cs, n.cm, cm_pub[j]);
    }

    // --- selectors and canonical roles --------------------------------------
    LC sel_sum;
    for (auto s : sel) {
        assert_boolean(cs, s);
        sel_sum += s;
    }
    assert_equal(cs, sel_sum, one);
    assert_boolean(cs, swap_in);
    assert_boolean(cs, swap_out);

    struct Role {
        LC s, c1, v1, c2, v2, bt, pair_tag, d, zv2, pos;
    };
    auto mux = [&](Variable bit, const LC& x1, const LC& x2, LC& first, LC& second) {
        Swapped r = swap_if(pb, bit, x1, x2);
        first = r.first;
        second = r.second;
    };
    Role A, B, P, Q;
    mux(swap_in, in1.s, in2.s, A.s, B.s);
    mux(swap_in, in1.c1, in2.c1, A.c1, B.c1);
    mux(swap_in, in1.v1, in2.v1, A.v1, B.v1);
    mux(swap_in, in1.c2, in2.c2, A.c2, B.c2);
    mux(swap_in, in1.v2, in2.v2, A.v2, B.v2);
    mux(swap_in, in1.bt, in2.bt, A.bt, B.bt);
    mux(swap_in, in1.pair_tag, in2.pair_tag, A.pair_tag, B.pair_tag);
    mux(swap_in, d1, d2, A.d, B.d);
    mux(swap_in, in1.zv2, in2.zv2, A.zv2, B.zv2);
    mux(swap_in, path1.position(), path2.position(), A.pos, B.pos);

    mux(swap_out, out1.s, out2.s, P.s, Q.s);
    mux(swap_out, out1.c1, out2.c1, P.c1, Q.c1);
    mux(swap_out, out1.v1, out2.v1, P.v1, Q.v1);
    mux(swap_out, out1.c2, out2.c2, P.c2, Q.c2);
    mux(swap_out, out1.v2, out2.v2, P.v2, Q.v2);
    mux(swap_out, out1.bt, out2.bt, P.bt, Q.bt);
    mux(swap_out, out1.zc1, out2.zc1, P.d, Q.d);
    mux(swap_out, out1.zv2, out2.zv2, P.zv2, Q.zv2);

    // [block_n <= bt]
    const LC le_A = less_or_equal(pb, block_n, A.bt, 32);
    const LC le_B = less_or_equal(pb, block_n, B.bt, 32);

    // (color - k) on every live note: zero iff the note is dummy or of color k
    auto off_color = [&](const Role& r) { return LC(product(pb, r.c1 - k, one - r.d)); };
    const LC u_A = off_color(A);
    const LC u_B = off_color(B);
    const LC u_P = off_color(P);
    const LC u_Q = off_color(Q);
    const LC z_po = is_zero(pb, po_amount);
    const LC z_pn = is_zero(pb, pn_amount);
    const LC w_po = product(pb, LC(po_color) - k, one - z_po);
    const LC w_pn = product(pb, LC(pn_color) - k, one - z_pn);

    // --- gates ---------------------------------------------------------------
    const LC s0 = sel[0], s1 = sel[1], s2 = sel[2], s3 = sel[3], s4 = sel[4], s5 = sel[5];
    const LC g1a = product(pb, s1, A.zv2);
    const LC g1b = s1 - g1a;
    const LC g2b = product(pb, s2, Q.s);
    const LC g2a = s2 - g2b;
    const LC g4b = product(pb, s4, Q.s);
    const LC g4a = s4 - g4b;
    const LC g_pair = s1 + g2b + g4b;
    const LC g_plain = s0 + g2a + s3 + g4a + s5;
    const LC g45 = s4 + s5;

    // output shapes
    when(g_pair, P.s);
    when(g_pair, one - Q.s);
    when(g_pair, P.zv2);
    when(g_pair, P.c2 - Q.c1);
    when(g_pair, P.v2 - Q.v1);
    when(g_pair, P.bt - Q.bt);

    when(g_plain, P.s);
    when(g_plain, Q.s);
    when(g_plain, one - P.zv2);
    when(g_plain, one - Q.zv2);

    // public value only moves in default payments
    when(one - s0, po_amount);
    when(one - s0, pn_amount);

    // Case 0: default payment
    when(s0, A.s);
    when(s0, B.s);
    when(s0, one - A.zv2);
    when(s0, one - B.zv2);
    when(s0, u_A);
    when(s0, u_B);
    when(s0, u_P);
    when(s0, u_Q);
    when(s0, w_po);
    when(s0, w_pn);
    when(s0, A.v1 + B.v1 + po_amount - P.v1 - Q.v1 - pn_amount);

    // Case 1: exchange initiation
    when(s1, A.s);
    when(s1, B.s);
    when(s1, one - B.zv2);
    when(g1a, LC(k) - P.c1);
    when(g1a, u_A);
    when(g1a, u_B);
    when(g1a, A.v1 + B.v1 - P.v1);
    when(g1b, A.c2 - B.c1);
    when(g1b, A.v2 - B.v1);
    when(g1b, one - le_A);
    when(g1b, P.c1 - A.c1);
    when(g1b, P.v1 - A.v1);

    // Case 2: cancellation by the initiator
    when(s2, A.s);
    when(s2, A.zv2);
    when(s2, one - B.s);
    when(s2, A.pair_tag - B.pair_tag);
    when(s2, A.c2 - B.c1);
    when(s2, A.v2 - B.v1);
    when(s2, le_A);
    when(g2a, LC(k) - A.c1);
    when(g2a, u_P);
    when(g2a, u_Q);
    when(g2a, P.v1 + Q.v1 - A.v1);
    when(g2b, P.c1 - A.c1);
    when(g2b, P.v1 - A.v1);

    // Case 3: counterparty response
    when(s3, A.s);
    when(s3, B.s);
    when(s3, A.zv2);
    when(s3, one - B.zv2);
    when(s3, A.c2 - B.c1);
    when(s3, B.v1 - A.v2 - Q.v1);
    when(s3, LC(k) - B.c1);
    when(s3, u_Q);
    when(s3, P.c1 - A.c1);
    when(s3, P.v1 - A.v1);
    when(s3, one - le_A);

    // Case 4: completion by the initiator
    when(s4, one - A.s);
    when(s4, B.s);
    when(s4, one - B.zv2);
    when(s4, le_A);
    when(s4, LC(k) - A.c1);
    when(s4, u_B);
    when(g4a, u_P);
    when(g4a, u_Q);
    when(g4a, A.v1 + B.v1 - P.v1 - Q.v1);
    when(g4b, P.c1 - A.c1);
    when(g4b, P.v1 - A.v1 - B.v1);

    // Case 5: completion that settles another primary's debt
    when(s5, one - A.s);
    when(s5, B.s);
    when(s5, B.zv2);
    when(s5, A.c1 - B.c2);
    when(s5, B.c2 - P.c1);
    when(s5, B.c1 - Q.c1);
    when(s5, A.v1 - B.v2 - P.v1);
    when(s5, B.v1 - Q.v1);
    when(s5, le_A);
    when(s5, one - le_B);

    // Cases 4 and 5: the sibling's paired primary has been spent
    {
        LC root3 = merkle_root(pb, n3.cm, path3);
        when(g45, root3 - rt);
        LC root4 = merkle_root(pb, nf_old_3, path4);
        when(g45, root4 - rt);
        const LC nf_in[2] = {a_sk3, n3.rho};
        Variable nf3 = hash_c(pb, tag::kNullifier, nf_in);
        when(g45, LC(nf3) - nf_old_3);
        const LC addr_in[2] = {a_sk3, LC{}};
        Variable addr3 = hash_c(pb, tag::kAddr, addr_in);
        when(g45, LC(addr3) - n3.a_pk);
        when(g45, n3.s);
        when(g45, LC(n3.pair_tag) - A.pair_tag);
        const LC gap = path3.position() - A.pos;
        Variable gap_sq = product(pb, gap, gap);
        when(g45, LC(gap_sq) - one);
    }
}

Fe JoinSplitCircuit::Impl::free_color(const PublicInput& chi, const Witness& omega, CaseId c,
                                      Permutation perm) const {
    const Note& a = perm.swap_in ? omega.n_old_2 : omega.n_old_1;
    const Note& b = perm.swap_in ? omega.n_old_1 : omega.n_old_2;
    const Note& p = perm.swap_out ? omega.n_new_2 : omega.n_new_1;
    const Note& q = perm.swap_out ? omega.n_new_1 : omega.n_new_2;
    switch (c) {
        case CaseId::DefaultPayment:
            for (const Note* n : {&a, &b, &p, &q}) {
                if (!n->is_dummy()) return Fe::from_u64(n->color1);
            }
            if (chi.v_pub_old.amount != 0) return Fe::from_u64(chi.v_pub_old.color);
            return Fe::from_u64(chi.v_pub_new.color);
        case CaseId::ExchangeInit: return Fe::from_u64(p.color1);
        case CaseId::CancelByInitiator:
        case CaseId::CompleteByInitiator: return Fe::from_u64(a.color1);
        case CaseId::CounterpartyResponse: return Fe::from_u64(b.color1);
        default: return Fe::zero();
    }
}

JoinSplitCircuit::JoinSplitCircuit(std::size_t depth) : impl_(std::make_unique<Impl>(depth)) {}
JoinSplitCircuit::~JoinSplitCircuit() = default;
JoinSplitCircuit::JoinSplitCircuit(JoinSplitCircuit&&) noexcept = default;
JoinSplitCircuit& JoinSplitCircuit::operator=(JoinSplitCircuit&&) noexcept = default;

std::size_t JoinSplitCircuit::depth() const { return impl_->depth; }
const ConstraintSystem& JoinSplitCircuit::cs() const { return impl_->pb.cs(); }

std::optional<Assignment> JoinSplitCircuit::synthesize(const PublicInput& chi,
                                                       const Witness& omega, CaseId selected,
                                                       Permutation perm) const {
    const Impl& m = *impl_;
    Assignment w = m.pb.cs().make_assignment();

    w[m.rt.index] = chi.rt.to_fe();
    w[m.nf1.index] = chi.nf_old_1.to_fe();
    w[m.nf2.index] = chi.nf_old_2.to_fe();
    w[m.cm1.index] = chi.cm_new_1.to_fe();
    w[m.cm2.index] = chi.cm_new_2.to_fe();
    w[m.po_color.index] = Fe::from_u64(chi.v_pub_old.color);
    w[m.po_amount.index] = Fe::from_u64(chi.v_pub_old.amount);
    w[m.pn_color.index] = Fe::from_u64(chi.v_pub_new.color);
    w[m.pn_amount.index] = Fe::from_u64(chi.v_pub_new.amount);
    w[m.block_n.index] = Fe::from_u64(chi.block_n);
    w[m.h_sig.index] = chi.h_sig.to_fe();
    w[m.h1.index] = chi.h_1.to_fe();
    w[m.h2.index] = chi.h_2.to_fe();

    w[m.a_sk1.index] = omega.a_sk_1.a_sk.to_fe();
    w[m.a_sk2.index] = omega.a_sk_2.a_sk.to_fe();
    w[m.a_sk3.index] = omega.a_sk_3.a_sk.to_fe();
    w[m.phi.index] = omega.phi.to_fe();
    w[m.d1.index] = bit_fe(omega.dummy_1);
    w[m.d2.index] = bit_fe(omega.dummy_2);
    w[m.nf_old_3.index] = omega.nf_old_3.to_fe();
    if (!assign_path(w, m.path1, omega.path_1) || !assign_path(w, m.path2, omega.path_2) ||
        !assign_path(w, m.path3, omega.path_3) || !assign_path(w, m.path4, omega.path_4)) {
        return std::nullopt;
    }
    assign_note(w, m.in1, omega.n_old_1);
    assign_note(w, m.in2, omega.n_old_2);
    assign_note(w, m.out1, omega.n_new_1);
    assign_note(w, m.out2, omega.n_new_2);
    assign_note(w, m.n3, omega.n_old_3);

    const auto idx = static_cast<std::size_t>(selected);
    for (std::size_t c = 0; c < kNumCases; ++c) w[m.sel[c].index] = bit_fe(c == idx);
    w[m.swap_in.index] = bit_fe(perm.swap_in);
    w[m.swap_out.index] = bit_fe(perm.swap_out);
    w[m.k.index] = m.free_color(chi, omega, selected, perm);

    m.pb.generate_witness(w);
    return w;
}

std::optional<std::size_t> JoinSplitCircuit::first_unsatisfied(const PublicInput& chi,
                                                               const Witness& omega,
                                                               CaseId selected,
                                                               Permutation perm) const {
    auto w = synthesize(chi, omega, selected, perm);
    if (!w) return 0;
    return first_unsatisfied_parallel(cs(), *w);
}

bool JoinSplitCircuit::accepts(const PublicInput& chi, const Witness& omega,
                               CaseId selected) const {
    for (Permutation perm : kAllPermutations) {
        if (is_satisfied(chi, omega, selected, perm)) return true;
    }
    return false;
}

}  // namespace omap::r1cs
