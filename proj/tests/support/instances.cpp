#include "instances.hpp"

#include <stdexcept>

#include "omap/merkle.hpp"
#include "omap/transactions.hpp"

namespace omap::testing {
namespace {

struct Builder {
    Rng& rng;
    CombinedTree tree;
    Digest32 h_sig;
    Digest32 phi;

    Builder(Rng& r, std::size_t depth)
        : rng(r), tree(depth), h_sig(r.next_field_digest()), phi(r.next_field_digest()) {
        const auto filler = rng.uniform(0, 5);
        for (std::uint64_t i = 0; i < filler; ++i) {
            tree.append(rng.next_field_digest(), LeafKind::Commitment);
        }
    }

    SpendingKey key() { return SpendingKey{rng.next_field_digest()}; }
    Color color() { return static_cast<Color>(rng.uniform(1, 1000)); }
    Color other_color(Color c) {
        Color k = color();
        while (k == c) k = color();
        return k;
    }
    Amount amount() { return rng.uniform(1, Amount{1} << 40); }

    Note plain_in(const SpendingKey& k, Asset a) {
        return make_plain_note(prf_addr(k), a, rng.next_field_digest(), rng.next_field_digest(),
                               rng.next_field_digest());
    }
    void add(const Note& n) { tree.append(n.cm, LeafKind::Commitment); }

    // Primary/sibling created by an earlier transaction; both go on the tree
    // next to each other.
    NotePair old_pair(const SpendingKey& shared, const SpendingKey& self, Asset give, Asset ask,
                      Height bt) {
        NotePair p = make_exchange_pair(prf_addr(shared), prf_addr(self), give, ask, bt,
                                        rng.next_field_digest(), rng.next_field_digest(),
                                        rng.next_field_digest(), rng.next_field_digest());
        add(p.primary);
        add(p.sibling);
        return p;
    }
    void spend(const Note& n, const SpendingKey& k) {
        tree.append(prf_nf(k, n.rho), LeafKind::Nullifier);
    }

    // Output j (1-based) of the transaction under construction.
    Note out(int j, const Digest32& a_pk, std::uint8_t s, Asset a1, Asset a2, Height bt) {
        Note n;
        n.a_pk = a_pk;
        n.s = s;
        n.color1 = a1.color;
        n.v1 = a1.amount;
        n.color2 = a2.color;
        n.v2 = a2.amount;
        n.bt = bt;
        n.rho = prf_rho(phi, j, h_sig);
        n.gamma = rng.next_field_digest();
        n.pair_tag = h_sig;
        return seal_note(n);
    }
    Note plain_out(int j, Asset a) {
        if (a.amount == 0 && rng.coin()) a.color = kDummyColor;
        return out(j, prf_addr(key()), 0, a, {}, 0);
    }
    std::array<Note, 2> plain_outs(Color k, Amount total) {
        const Amount first = rng.uniform(0, total);
        return {plain_out(1, {k, first}), plain_out(2, {k, total - first})};
    }
    std::array<Note, 2> pair_outs(Asset give, Height bt) {
        const SpendingKey shared = key();
        const SpendingKey self = key();
        const Asset ask{other_color(give.color), amount()};
        return {out(1, prf_addr(shared), 0, give, ask, bt), out(2, prf_addr(self), 1, ask, {}, bt)};
    }

    Instance finish(CaseId c, std::string label, std::array<InputSpend, 2> ins,
                    std::array<Note, 2> outs, Height block_n, Asset po = {}, Asset pn = {},
                    std::optional<SiblingEvidence> ev = std::nullopt) {
        if (rng.coin()) std::swap(ins[0], ins[1]);
        if (rng.coin()) {
            // rho and the commitment bind the output index, so a swap reseals
            std::swap(outs[0], outs[1]);
            for (int j = 0; j < 2; ++j) {
                outs[j].rho = prf_rho(phi, j + 1, h_sig);
                outs[j] = seal_note(outs[j]);
            }
        }
        StatementParts parts;
        parts.inputs = ins;
        parts.outputs = outs;
        parts.phi = phi;
        parts.h_sig = h_sig;
        parts.h_1 = prf_spend_auth(ins[0].a_sk, 1, h_sig);
        parts.h_2 = prf_spend_auth(ins[1].a_sk, 2, h_sig);
        parts.v_pub_old = po;
        parts.v_pub_new = pn;
        parts.evidence = ev;
        auto [chi, w] = assemble_statement(tree, block_n, parts);
        return Instance{c, chi, w, std::move(label)};
    }
};

Height height(Rng& rng) { return static_cast<Height>(rng.uniform(16, 1u << 20)); }

}  // namespace

InstanceFactory::InstanceFactory(std::size_t depth, std::uint64_t seed)
    : depth_(depth), rng_(seed) {}

Instance InstanceFactory::make(CaseId c) {
    Builder b(rng_, depth_);
    const SpendingKey alice = b.key();
    const SpendingKey bob = b.key();
    const Height block_n = height(rng_);

    auto live_or_dummy = [&](const SpendingKey& k, Asset a, bool dummy) {
        if (dummy) return make_dummy_input(rng_);
        Note n = b.plain_in(k, a);
        b.add(n);
        return InputSpend{n, k};
    };

    switch (c) {
        case CaseId::DefaultPayment: {
            const Color k = b.color();
            const auto shape = rng_.uniform(0, 3);
            const bool dummy_b = shape >= 1;
            const bool dummy_a = shape == 3;
            const Amount va = dummy_a ? 0 : b.amount();
            const Amount vb = dummy_b ? 0 : b.amount();
            Asset po{}, pn{};
            if (shape >= 2) po = {k, b.amount()};
            const Amount total = va + vb + po.amount;
            if (shape == 1 && rng_.coin()) pn = {k, rng_.uniform(1, total)};
            auto ins = std::array<InputSpend, 2>{live_or_dummy(alice, {k, va}, dummy_a),
                                                 live_or_dummy(alice, {k, vb}, dummy_b)};
            return b.finish(c, "payment/" + std::to_string(shape), ins,
                            b.plain_outs(k, total - pn.amount), block_n, po, pn);
        }

        case CaseId::ExchangeInit: {
            const Color k = b.color();
            if (rng_.coin()) {
                const bool dummy_b = rng_.coin();
                const Amount va = b.amount();
                const Amount vb = dummy_b ? 0 : b.amount();
                auto ins = std::array<InputSpend, 2>{live_or_dummy(alice, {k, va}, false),
                                                     live_or_dummy(alice, {k, vb}, dummy_b)};
                return b.finish(c, "init/fund", ins,
                                b.pair_outs({k, va + vb}, block_n + rng_.uniform(0, 9)), block_n);
            }
            // re-offer: an answered primary is spent with the payment of its
            // debt into a fresh pair carrying the same asset
            const SpendingKey shared = b.key();
            const Asset give{k, b.amount()};
            const Asset ask{b.other_color(k), b.amount()};
            NotePair old = b.old_pair(shared, alice, give, ask, block_n + rng_.uniform(0, 9));
            Note pay = b.plain_in(bob, ask);
            b.add(pay);
            auto ins = std::array<InputSpend, 2>{InputSpend{old.primary, shared},
                                                 InputSpend{pay, bob}};
            return b.finish(c, "init/reoffer", ins, b.pair_outs(give, block_n + 3), block_n);
        }

        case CaseId::CancelByInitiator: {
            const SpendingKey shared = b.key();
            const Color k = b.color();
            const Asset give{k, b.amount()};
            const Asset ask{b.other_color(k), b.amount()};
            const Height bt = block_n - static_cast<Height>(rng_.uniform(1, block_n - 1));
            NotePair old = b.old_pair(shared, alice, give, ask, bt);
            auto ins = std::array<InputSpend, 2>{InputSpend{old.primary, shared},
                                                 InputSpend{old.sibling, alice}};
            if (rng_.coin()) {
                return b.finish(c, "cancel/plain", ins, b.plain_outs(k, give.amount), block_n);
            }
            return b.finish(c, "cancel/reoffer", ins, b.pair_outs(give, block_n + 5), block_n);
        }

        case CaseId::CounterpartyResponse: {
            const SpendingKey shared = b.key();
            const Color k = b.color();
            const Asset give{k, b.amount()};
            const Asset ask{b.other_color(k), b.amount()};
            const Height bt = block_n + static_cast<Height>(rng_.uniform(0, 9));
            NotePair old = b.old_pair(shared, alice, give, ask, bt);
            const Amount change = rng_.coin() ? 0 : b.amount();
            Note pay = b.plain_in(bob, {ask.color, ask.amount + change});
            b.add(pay);
            auto ins = std::array<InputSpend, 2>{InputSpend{old.primary, shared},
                                                 InputSpend{pay, bob}};
            std::array<Note, 2> outs{b.plain_out(1, give), b.plain_out(2, {ask.color, change})};
            return b.finish(c, "response", ins, outs, block_n);
        }

        case CaseId::CompleteByInitiator: {
            const SpendingKey shared = b.key();
            const Color k = b.color();
            const Asset give{k, b.amount()};
            const Asset ask{b.other_color(k), b.amount()};
            const Height bt = block_n - static_cast<Height>(rng_.uniform(1, block_n - 1));
            NotePair old = b.old_pair(shared, alice, give, ask, bt);
            b.spend(old.primary, shared);
            const bool dummy_b = rng_.coin();
            const Amount vb = dummy_b ? 0 : b.amount();
            auto ins = std::array<InputSpend, 2>{InputSpend{old.sibling, alice},
                                                 live_or_dummy(alice, {ask.color, vb}, dummy_b)};
            const SiblingEvidence ev{old.primary, shared};
            if (rng_.coin()) {
                return b.finish(c, "complete/plain", ins,
                                b.plain_outs(ask.color, ask.amount + vb), block_n, {}, {}, ev);
            }
            return b.finish(c, "complete/reoffer", ins,
                            b.pair_outs({ask.color, ask.amount + vb}, block_n + 2), block_n, {}, {},
                            ev);
        }

        case CaseId::CompleteSecondScenario: {
            // alice's answered offer gave k for k2; she uses the sibling (k2)
            // to answer someone else's offer of k3 for k2
            const SpendingKey shared1 = b.key();
            const SpendingKey shared2 = b.key();
            const Color k = b.color();
            const Color k2 = b.other_color(k);
            const Color k3 = b.other_color(k2);
            const Asset ask{k2, b.amount()};
            const Height bt1 = block_n - static_cast<Height>(rng_.uniform(1, block_n - 1));
            NotePair first = b.old_pair(shared1, alice, {k, b.amount()}, ask, bt1);
            b.spend(first.primary, shared1);
            const Amount debt = rng_.coin() ? ask.amount : rng_.uniform(1, ask.amount);
            const Asset offered{k3, b.amount()};
            NotePair second = b.old_pair(shared2, bob, offered, {k2, debt},
                                         block_n + static_cast<Height>(rng_.uniform(0, 9)));
            auto ins = std::array<InputSpend, 2>{InputSpend{first.sibling, alice},
                                                 InputSpend{second.primary, shared2}};
            std::array<Note, 2> outs{b.out(1, prf_addr(alice), 0, {k2, ask.amount - debt}, {}, 0),
                                     b.out(2, prf_addr(alice), 0, offered, {}, 0)};
            return b.finish(c, "second", ins, outs, block_n, {}, {},
                            SiblingEvidence{first.primary, shared1});
        }

        case CaseId::Disallowed: break;
    }
    throw std::invalid_argument("no instances for the disallowed case");
}

Instance mutate(const Instance& in, Rng& rng) {
    Instance m = in;
    PublicInput& chi = m.chi;
    Witness& w = m.w;
    auto bump = [&](auto& v) {
        using T = std::remove_reference_t<decltype(v)>;
        v = rng.coin() ? static_cast<T>(v + 1) : static_cast<T>(v - 1);
    };
    auto tag = [&](std::string t) { m.label += "~" + std::move(t); };

    // resealed output change: commitment follows the note
    auto reseal_out = [&](int j, auto&& change, const char* what) {
        Note& n = j == 0 ? w.n_new_1 : w.n_new_2;
        change(n);
        if (!note_invariant_violation(n)) {
            n = seal_note(n);
            (j == 0 ? chi.cm_new_1 : chi.cm_new_2) = n.cm;
        }
        tag(std::string("out") + std::to_string(j + 1) + "." + what);
    };

    Note& old = rng.coin() ? w.n_old_1 : w.n_old_2;
    const int j = static_cast<int>(rng.uniform(0, 1));
    switch (rng.uniform(0, 27)) {
        case 0: chi.rt = Digest32::from_fe(chi.rt.to_fe() + Fe::one()); tag("rt"); break;
        case 1: chi.nf_old_1 = rng.next_field_digest(); tag("nf1"); break;
        case 2: chi.nf_old_2 = rng.next_field_digest(); tag("nf2"); break;
        case 3: chi.cm_new_1 = rng.next_field_digest(); tag("cm1"); break;
        case 4: bump(chi.v_pub_old.amount); tag("pub_old"); break;
        case 5: bump(chi.v_pub_new.amount); tag("pub_new"); break;
        case 6: bump(chi.v_pub_old.color); tag("pub_old.color"); break;
        case 7: bump(chi.block_n); tag("block"); break;
        case 8: chi.block_n = w.n_old_1.bt + static_cast<Height>(rng.uniform(0, 1)); tag("block=bt"); break;
        case 9: chi.h_sig = rng.next_field_digest(); tag("h_sig"); break;
        case 10: bump(old.v1); tag("in.v1"); break;
        case 11: bump(old.color1); tag("in.color1"); break;
        case 12: old.s ^= 1; tag("in.s"); break;
        case 13: bump(old.bt); tag("in.bt"); break;
        case 14: w.a_sk_1 = SpendingKey{rng.next_field_digest()}; tag("a_sk1"); break;
        case 15: w.phi = rng.next_field_digest(); tag("phi"); break;
        case 16: w.dummy_2 = !w.dummy_2; tag("dummy2"); break;
        case 17: bump(w.path_1.pos); tag("pos1"); break;
        case 18: w.path_2.siblings[0] = rng.next_field_digest(); tag("path2"); break;
        case 19: reseal_out(j, [&](Note& n) { bump(n.v1); }, "v1"); break;
        case 20: reseal_out(j, [&](Note& n) { bump(n.color1); }, "color1"); break;
        case 21: reseal_out(j, [&](Note& n) { bump(n.v2); }, "v2"); break;
        case 22: reseal_out(j, [&](Note& n) { bump(n.bt); }, "bt"); break;
        case 23: reseal_out(j, [&](Note& n) { n.s ^= 1; }, "s"); break;
        case 24: reseal_out(j, [&](Note& n) { n.color2 = n.color2 ? 0 : n.color1 + 1; n.v2 = n.v2 ? 0 : 1; }, "debt"); break;
        case 25: bump(w.path_3.pos); tag("pos3"); break;
        case 26: w.nf_old_3 = rng.next_field_digest(); tag("nf3"); break;
        default: bump(w.n_old_3.v2); tag("n3.v2"); break;
    }
    return m;
}

}  // namespace omap::testing
