#include "omap/ledger.hpp"

#include <stdexcept>

namespace omap {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accept: return "accept";
        case Verdict::DuplicateNullifier: return "duplicate-nullifier";
        case Verdict::UnknownRoot: return "unknown-root";
        case Verdict::HsigMismatch: return "hsig-mismatch";
        case Verdict::InvalidProof: return "invalid-proof";
        case Verdict::InvalidSignature: return "invalid-signature";
    }
    return "?";
}

std::string_view verdict_name(MintVerdict v) {
    switch (v) {
        case MintVerdict::Accept: return "accept";
        case MintVerdict::ReservedColor: return "reserved-color";
        case MintVerdict::BadCommitment: return "bad-commitment";
        case MintVerdict::TreeFull: return "tree-full";
    }
    return "?";
}

Ledger::Ledger(r1cs::SetupParams params)
    : params_(std::move(params)), tree_(params_.depth()) {}

Verdict Ledger::check(const JoinSplitTransaction& tx) const {
    if (tx.nf_old_1 == tx.nf_old_2 || is_spent(tx.nf_old_1) || is_spent(tx.nf_old_2)) {
        return Verdict::DuplicateNullifier;
    }
    if (!tree_.is_known_root(tx.rt)) return Verdict::UnknownRoot;
    if (compute_h_sig(tx.nf_old_1, tx.nf_old_2, tx.pk_sig) != tx.h_sig) {
        return Verdict::HsigMismatch;
    }
    if (!r1cs::verify(params_.vk_joinsplit, statement_of(tx, block_n_), tx.proof)) {
        return Verdict::InvalidProof;
    }
    if (!verify_sig(tx.pk_sig, signing_message(tx, block_n_), tx.delta)) {
        return Verdict::InvalidSignature;
    }
    return Verdict::Accept;
}

Verdict Ledger::verify_and_append(const JoinSplitTransaction& tx) {
    const Verdict v = check(tx);
    if (v != Verdict::Accept) return v;
    if (tree_.capacity() - tree_.size() < 4) throw MerkleError("tree is full");

    const std::uint64_t first = tree_.append(tx.cm_new_1, LeafKind::Commitment);
    tree_.append(tx.cm_new_2, LeafKind::Commitment);
    tree_.append(tx.nf_old_1, LeafKind::Nullifier);
    tree_.append(tx.nf_old_2, LeafKind::Nullifier);
    nullifiers_.insert(tx.nf_old_1);
    nullifiers_.insert(tx.nf_old_2);
    if (tx.v_pub_old.amount != 0) supply_[tx.v_pub_old.color].shielded_in += tx.v_pub_old.amount;
    if (tx.v_pub_new.amount != 0) {
        supply_[tx.v_pub_new.color].shielded_out += tx.v_pub_new.amount;
    }
    entries_.push_back(LedgerEntry{block_n_, tx, first});
    return Verdict::Accept;
}

MintVerdict Ledger::apply_mint(const MintTransaction& tx) {
    if (tx.color == kDummyColor) return MintVerdict::ReservedColor;
    Fe inner;
    if (!Fe::from_bytes_canonical(tx.inner.bytes, inner)) return MintVerdict::BadCommitment;
    if (commit_from_inner(inner, mint_scalars(tx.color, tx.value)) != tx.cm) {
        return MintVerdict::BadCommitment;
    }
    if (tree_.size() >= tree_.capacity()) return MintVerdict::TreeFull;
    const std::uint64_t pos = tree_.append(tx.cm, LeafKind::Commitment);
    supply_[tx.color].minted += tx.value;
    entries_.push_back(LedgerEntry{block_n_, tx, pos});
    return MintVerdict::Accept;
}

Height Ledger::advance_block(Height n) {
    if (n == 0) throw std::invalid_argument("advance_block needs n >= 1");
    block_n_ += n;
    return block_n_;
}

std::optional<Note> open_note(const PaymentAddress& addr, std::span<const std::uint8_t> ct,
                              const Digest32& cm) {
    auto pt = decrypt_note(addr.enc_sk, ct);
    if (!pt) return std::nullopt;
    try {
        Note n = deserialize_note(*pt);
        if (n.cm != cm) return std::nullopt;
        return n;
    } catch (const NoteError&) {
        return std::nullopt;
    }
}

std::vector<ReceivedNote> Ledger::scan_receive(const PaymentAddress& addr,
                                               const SpendingKey& a_sk) const {
    std::vector<ReceivedNote> out;
    const Digest32 a_pk = prf_addr(a_sk);
    auto consider = [&](std::span<const std::uint8_t> ct, const Digest32& cm, std::uint64_t pos) {
        auto n = open_note(addr, ct, cm);
        if (!n || n->a_pk != a_pk) return;
        const bool spendable = !is_spent(prf_nf(a_sk, n->rho));
        out.push_back(ReceivedNote{*n, pos, spendable});
    };
    for (const auto& e : entries_) {
        if (const auto* m = std::get_if<MintTransaction>(&e.tx)) {
            consider(m->enc_note, m->cm, e.first_pos);
        } else {
            const auto& tx = std::get<JoinSplitTransaction>(e.tx);
            consider(tx.enc_note_1, tx.cm_new_1, e.first_pos);
            consider(tx.enc_note_2, tx.cm_new_2, e.first_pos + 1);
        }
    }
    return out;
}

std::optional<std::pair<std::uint64_t, MerklePath>> Ledger::scan_nullifier(
    const Digest32& nf) const {
    if (!is_spent(nf)) return std::nullopt;
    auto pos = tree_.find(nf);
    if (!pos) return std::nullopt;
    return std::make_pair(*pos, tree_.path(*pos));
}

void Ledger::dump(std::ostream& os) const {
    const auto& leaves = tree_.leaves();
    for (std::uint64_t i = 0; i < leaves.size(); ++i) {
        os << (tree_.kind_at(i) == LeafKind::Commitment ? "cm " : "nf ") << i << ' '
           << leaves[i].hex() << '\n';
    }
}

}  // namespace omap
