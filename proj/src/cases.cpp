#include "omap/cases.hpp"

namespace omap {
namespace {

using u128 = unsigned __int128;

int count(bool a, bool b) { return static_cast<int>(a) + static_cast<int>(b); }

Fe fold_root(const Fe& leaf, const MerklePath& path) {
    Fe cur = leaf;
    for (std::size_t l = 0; l < path.siblings.size(); ++l) {
        Fe sib = path.siblings[l].to_fe();
        cur = ((path.pos >> l) & 1) ? merkle_node_fe(sib, cur) : merkle_node_fe(cur, sib);
    }
    return cur;
}

bool path_fits(const MerklePath& p, std::size_t depth) {
    return p.siblings.size() == depth && (depth >= 64 || (p.pos >> depth) == 0);
}

Fe commitment_fe(const Note& n) {
    return mimc::compress(commitment_inner(n), pack_note_scalars(n));
}

Fe nf_fe(const Digest32& a_sk, const Digest32& rho) {
    const Fe in[2] = {a_sk.to_fe(), rho.to_fe()};
    return hash_c(tag::kNullifier, in);
}

Fe addr_fe(const Digest32& a_sk) {
    const Fe in[2] = {a_sk.to_fe(), Fe::zero()};
    return hash_c(tag::kAddr, in);
}

Fe rho_fe(const Digest32& phi, int j, const Digest32& h_sig) {
    const Fe in[3] = {Fe::from_u64(static_cast<std::uint64_t>(j)), phi.to_fe(), h_sig.to_fe()};
    return hash_c(tag::kRho, in);
}

bool well_formed(const Note& n) { return !note_invariant_violation(n).has_value(); }

bool same_tag(const Note& a, const Note& b) { return a.pair_tag.to_fe() == b.pair_tag.to_fe(); }

// A note is "of color k" when it is a dummy or carries color k.
bool color_ok(const Note& n, Color k) { return n.is_dummy() || n.color1 == k; }

bool common_checks(const PublicInput& chi, const Witness& w) {
    const std::size_t depth = w.path_1.siblings.size();
    for (const MerklePath* p : {&w.path_1, &w.path_2, &w.path_3, &w.path_4}) {
        if (!path_fits(*p, depth)) return false;
    }
    for (const Note* n : {&w.n_old_1, &w.n_old_2, &w.n_new_1, &w.n_new_2, &w.n_old_3}) {
        if (!well_formed(*n)) return false;
    }

    const Fe rt = chi.rt.to_fe();
    const Note* ins[2] = {&w.n_old_1, &w.n_old_2};
    const SpendingKey* keys[2] = {&w.a_sk_1, &w.a_sk_2};
    const bool dummy[2] = {w.dummy_1, w.dummy_2};
    const Digest32* nfs[2] = {&chi.nf_old_1, &chi.nf_old_2};
    const MerklePath* paths[2] = {&w.path_1, &w.path_2};
    for (int i = 0; i < 2; ++i) {
        const Note& n = *ins[i];
        if (dummy[i] != n.is_dummy()) return false;
        if (nf_fe(keys[i]->a_sk, n.rho) != nfs[i]->to_fe()) return false;
        if (dummy[i]) continue;
        if (addr_fe(keys[i]->a_sk) != n.a_pk.to_fe()) return false;
        if (fold_root(commitment_fe(n), *paths[i]) != rt) return false;
    }

    const Note* outs[2] = {&w.n_new_1, &w.n_new_2};
    const Digest32* cms[2] = {&chi.cm_new_1, &chi.cm_new_2};
    const Fe h_sig = chi.h_sig.to_fe();
    for (int j = 0; j < 2; ++j) {
        const Note& n = *outs[j];
        if (n.pair_tag.to_fe() != h_sig) return false;
        if (n.rho.to_fe() != rho_fe(w.phi, j + 1, chi.h_sig)) return false;
        if (commitment_fe(n) != cms[j]->to_fe()) return false;
    }
    return true;
}

// The sibling `a` (at `pos_a`) has a spent paired primary on the ledger.
bool primary_spent(const PublicInput& chi, const Witness& w, const Note& a, std::uint64_t pos_a) {
    const Fe rt = chi.rt.to_fe();
    const Note& n3 = w.n_old_3;
    if (fold_root(commitment_fe(n3), w.path_3) != rt) return false;
    if (fold_root(w.nf_old_3.to_fe(), w.path_4) != rt) return false;
    if (nf_fe(w.a_sk_3.a_sk, n3.rho) != w.nf_old_3.to_fe()) return false;
    if (addr_fe(w.a_sk_3.a_sk) != n3.a_pk.to_fe()) return false;
    if (n3.s != 0) return false;
    if (!same_tag(n3, a)) return false;
    const std::uint64_t p3 = w.path_3.pos;
    return p3 + 1 == pos_a || pos_a + 1 == p3;
}

bool pair_outputs(const Note& p, const Note& q) {
    return p.s == 0 && q.s == 1 && p.has_debt() && p.color2 == q.color1 && p.v2 == q.v1 &&
           p.bt == q.bt;
}

bool plain_outputs(const Note& p, const Note& q) {
    return p.s == 0 && q.s == 0 && !p.has_debt() && !q.has_debt();
}

}  // namespace

CaseId classify_case(const Note& n_old_1, const Note& n_old_2, const Note& n_new_1,
                     const Note& n_new_2) {
    const int in_sib = count(n_old_1.is_sibling(), n_old_2.is_sibling());
    const int in_debt = count(n_old_1.has_debt(), n_old_2.has_debt());
    const int out_sib = count(n_new_1.is_sibling(), n_new_2.is_sibling());
    const int out_debt = count(n_new_1.has_debt(), n_new_2.has_debt());

    if (in_sib == 2 || out_sib == 2) return CaseId::Disallowed;
    if (out_sib == 1 && out_debt != 1) return CaseId::Disallowed;
    if (out_sib == 0 && out_debt != 0) return CaseId::Disallowed;
    const bool pair_out = out_sib == 1;

    if (in_sib == 0) {
        if (in_debt == 0) return pair_out ? CaseId::ExchangeInit : CaseId::DefaultPayment;
        if (in_debt == 1) return pair_out ? CaseId::ExchangeInit : CaseId::CounterpartyResponse;
        return CaseId::Disallowed;
    }

    const Note& sib = n_old_1.is_sibling() ? n_old_1 : n_old_2;
    const Note& other = n_old_1.is_sibling() ? n_old_2 : n_old_1;
    if (!other.has_debt()) return CaseId::CompleteByInitiator;
    if (pair_out) return CaseId::CancelByInitiator;
    return sib.pair_tag == other.pair_tag ? CaseId::CancelByInitiator
                                          : CaseId::CompleteSecondScenario;
}

namespace {

// Condition set of one case with the notes in the roles given by `perm`.
bool case_conditions(CaseId c, const PublicInput& chi, const Witness& w, Permutation perm) {
    const Note& A = perm.swap_in ? w.n_old_2 : w.n_old_1;
    const Note& B = perm.swap_in ? w.n_old_1 : w.n_old_2;
    const Note& P = perm.swap_out ? w.n_new_2 : w.n_new_1;
    const Note& Q = perm.swap_out ? w.n_new_1 : w.n_new_2;
    const std::uint64_t pos_a = perm.swap_in ? w.path_2.pos : w.path_1.pos;
    const bool le_a = chi.block_n <= A.bt;
    const bool le_b = chi.block_n <= B.bt;
    const u128 po = chi.v_pub_old.amount;
    const u128 pn = chi.v_pub_new.amount;

    if (c != CaseId::DefaultPayment && (po != 0 || pn != 0)) return false;

    switch (c) {
        case CaseId::DefaultPayment: {
            if (A.s != 0 || B.s != 0 || A.has_debt() || B.has_debt()) return false;
            if (!plain_outputs(P, Q)) return false;
            // every live note and every nonzero public amount share one color
            std::optional<Color> k;
            auto fix = [&k](Color col) {
                if (!k) k = col;
                return *k == col;
            };
            for (const Note* n : {&A, &B, &P, &Q}) {
                if (!n->is_dummy() && !fix(n->color1)) return false;
            }
            if (po != 0 && !fix(chi.v_pub_old.color)) return false;
            if (pn != 0 && !fix(chi.v_pub_new.color)) return false;
            return u128{A.v1} + B.v1 + po == u128{P.v1} + Q.v1 + pn;
        }

        case CaseId::ExchangeInit: {
            if (A.s != 0 || B.s != 0 || B.has_debt()) return false;
            if (!pair_outputs(P, Q)) return false;
            if (!A.has_debt()) {
                const Color k = P.color1;
                return color_ok(A, k) && color_ok(B, k) && u128{A.v1} + B.v1 == P.v1;
            }
            return A.color2 == B.color1 && A.v2 == B.v1 && le_a && P.color1 == A.color1 &&
                   P.v1 == A.v1;
        }

        case CaseId::CancelByInitiator: {
            if (A.s != 0 || !A.has_debt() || B.s != 1 || !same_tag(A, B)) return false;
            if (A.color2 != B.color1 || A.v2 != B.v1 || le_a) return false;
            if (Q.s == 0) {
                if (!plain_outputs(P, Q)) return false;
                return color_ok(P, A.color1) && color_ok(Q, A.color1) &&
                       u128{P.v1} + Q.v1 == A.v1;
            }
            return pair_outputs(P, Q) && P.color1 == A.color1 && P.v1 == A.v1;
        }

        case CaseId::CounterpartyResponse:
            return A.s == 0 && B.s == 0 && A.has_debt() && !B.has_debt() &&
                   A.color2 == B.color1 && u128{B.v1} == u128{A.v2} + Q.v1 &&
                   color_ok(Q, B.color1) && P.color1 == A.color1 && P.v1 == A.v1 && le_a &&
                   plain_outputs(P, Q);

        case CaseId::CompleteByInitiator: {
            if (A.s != 1 || B.s != 0 || B.has_debt() || le_a) return false;
            const Color k = A.color1;
            if (!color_ok(B, k)) return false;
            if (!primary_spent(chi, w, A, pos_a)) return false;
            if (Q.s == 0) {
                return plain_outputs(P, Q) && color_ok(P, k) && color_ok(Q, k) &&
                       u128{A.v1} + B.v1 == u128{P.v1} + Q.v1;
            }
            return pair_outputs(P, Q) && P.color1 == A.color1 && u128{P.v1} == u128{A.v1} + B.v1;
        }

        case CaseId::CompleteSecondScenario:
            return A.s == 1 && B.s == 0 && B.has_debt() && A.color1 == B.color2 &&
                   B.color2 == P.color1 && B.color1 == Q.color1 &&
                   u128{A.v1} == u128{B.v2} + P.v1 && B.v1 == Q.v1 && !le_a && le_b &&
                   plain_outputs(P, Q) && primary_spent(chi, w, A, pos_a);

        case CaseId::Disallowed: return false;
    }
    return false;
}

}  // namespace

bool case_holds(CaseId c, const PublicInput& chi, const Witness& w, Permutation perm) {
    if (c == CaseId::Disallowed || !common_checks(chi, w)) return false;
    return case_conditions(c, chi, w, perm);
}

std::optional<Permutation> satisfying_permutation(CaseId c, const PublicInput& chi,
                                                  const Witness& omega) {
    if (c == CaseId::Disallowed || !common_checks(chi, omega)) return std::nullopt;
    for (Permutation perm : kAllPermutations) {
        if (case_conditions(c, chi, omega, perm)) return perm;
    }
    return std::nullopt;
}

bool case_predicate(CaseId c, const PublicInput& chi, const Witness& omega) {
    return satisfying_permutation(c, chi, omega).has_value();
}

}  // namespace omap
