#include "omap/transactions.hpp"

#include <algorithm>

namespace omap {
namespace {

class Writer {
public:
    explicit Writer(std::uint8_t* p) : p_(p) {}
    template <typename T>
    void be(T v) {
        for (int i = static_cast<int>(sizeof(T)) - 1; i >= 0; --i) {
            *p_++ = static_cast<std::uint8_t>(v >> (8 * i));
        }
    }
    void raw(std::span<const std::uint8_t> b) { p_ = std::copy(b.begin(), b.end(), p_); }
    void digest(const Digest32& d) { raw(d.bytes); }

private:
    std::uint8_t* p_;
};

class Reader {
public:
    explicit Reader(const std::uint8_t* p) : p_(p) {}
    template <typename T>
    T be() {
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | *p_++);
        return v;
    }
    template <std::size_t N>
    void raw(std::array<std::uint8_t, N>& out) {
        std::copy(p_, p_ + N, out.begin());
        p_ += N;
    }
    Digest32 digest() {
        Digest32 d;
        raw(d.bytes);
        return d;
    }

private:
    const std::uint8_t* p_;
};

// Everything except delta.
void write_body(Writer& w, const JoinSplitTransaction& tx) {
    w.digest(tx.rt);
    w.digest(tx.nf_old_1);
    w.digest(tx.nf_old_2);
    w.digest(tx.cm_new_1);
    w.digest(tx.cm_new_2);
    w.be(tx.v_pub_old.color);
    w.be(tx.v_pub_old.amount);
    w.be(tx.v_pub_new.color);
    w.be(tx.v_pub_new.amount);
    w.digest(tx.h_sig);
    w.raw(tx.memo);
    w.raw(tx.pk_sig);
    w.digest(tx.h_1);
    w.digest(tx.h_2);
    w.raw(tx.proof.tag);
    w.raw(tx.enc_note_1);
    w.raw(tx.enc_note_2);
}

constexpr std::size_t kBodyBytes = kTxBytes - kSignatureBytes;

Nullifier input_nullifier(const InputSpend& in) {
    if (in.note.is_dummy()) return Nullifier{prf_nf(in.a_sk, in.note.rho)};
    try {
        return nullifier_of(in.note, in.a_sk);
    } catch (const NoteError& e) {
        throw TransactionError(e.what());
    }
}

EncNote encrypt_to(const PaymentAddress& addr, const Note& n, Rng& rng) {
    const auto pt = serialize_note(n);
    Bytes ct = encrypt_note(addr.enc_pk, pt, rng.next_digest());
    EncNote out{};
    std::copy(ct.begin(), ct.end(), out.begin());
    return out;
}

}  // namespace

TxBytes serialize_tx(const JoinSplitTransaction& tx) {
    TxBytes out{};
    Writer w(out.data());
    write_body(w, tx);
    w.raw(tx.delta);
    return out;
}

JoinSplitTransaction deserialize_tx(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kTxBytes) throw TransactionError("transaction encoding has wrong length");
    Reader r(bytes.data());
    JoinSplitTransaction tx;
    tx.rt = r.digest();
    tx.nf_old_1 = r.digest();
    tx.nf_old_2 = r.digest();
    tx.cm_new_1 = r.digest();
    tx.cm_new_2 = r.digest();
    tx.v_pub_old.color = r.be<Color>();
    tx.v_pub_old.amount = r.be<Amount>();
    tx.v_pub_new.color = r.be<Color>();
    tx.v_pub_new.amount = r.be<Amount>();
    tx.h_sig = r.digest();
    r.raw(tx.memo);
    r.raw(tx.pk_sig);
    tx.h_1 = r.digest();
    tx.h_2 = r.digest();
    r.raw(tx.proof.tag);
    r.raw(tx.enc_note_1);
    r.raw(tx.enc_note_2);
    r.raw(tx.delta);
    return tx;
}

PublicInput statement_of(const JoinSplitTransaction& tx, Height block_n) {
    PublicInput chi;
    chi.rt = tx.rt;
    chi.nf_old_1 = tx.nf_old_1;
    chi.nf_old_2 = tx.nf_old_2;
    chi.cm_new_1 = tx.cm_new_1;
    chi.cm_new_2 = tx.cm_new_2;
    chi.v_pub_old = tx.v_pub_old;
    chi.v_pub_new = tx.v_pub_new;
    chi.block_n = block_n;
    chi.h_sig = tx.h_sig;
    chi.h_1 = tx.h_1;
    chi.h_2 = tx.h_2;
    return chi;
}

Bytes signing_message(const JoinSplitTransaction& tx, Height block_n) {
    Bytes m(4 + kBodyBytes);
    Writer w(m.data());
    w.be(block_n);
    write_body(w, tx);
    return m;
}

PaymentAddress Recipient::resolve(const Digest32& h_sig) const {
    if (shared_secret.empty()) return addr;
    return derive_address(derive_shared_spending_key(shared_secret, h_sig));
}

std::pair<PublicInput, Witness> assemble_statement(const CombinedTree& tree, Height block_n,
                                                   const StatementParts& parts) {
    const std::size_t depth = tree.depth();
    PublicInput chi;
    Witness w;

    chi.rt = tree.root();
    chi.nf_old_1 = input_nullifier(parts.inputs[0]).nf;
    chi.nf_old_2 = input_nullifier(parts.inputs[1]).nf;
    chi.cm_new_1 = parts.outputs[0].cm;
    chi.cm_new_2 = parts.outputs[1].cm;
    chi.v_pub_old = parts.v_pub_old;
    chi.v_pub_new = parts.v_pub_new;
    chi.block_n = block_n;
    chi.h_sig = parts.h_sig;
    chi.h_1 = parts.h_1;
    chi.h_2 = parts.h_2;

    auto input_path = [&](const InputSpend& in) {
        if (in.note.is_dummy()) return zero_path(depth);
        auto pos = tree.find(in.note.cm);
        if (!pos || tree.kind_at(*pos) != LeafKind::Commitment) {
            throw TransactionError("input note commitment is not on the ledger");
        }
        return tree.path(*pos);
    };
    w.path_1 = input_path(parts.inputs[0]);
    w.path_2 = input_path(parts.inputs[1]);
    w.n_old_1 = parts.inputs[0].note;
    w.n_old_2 = parts.inputs[1].note;
    w.a_sk_1 = parts.inputs[0].a_sk;
    w.a_sk_2 = parts.inputs[1].a_sk;
    w.phi = parts.phi;
    w.dummy_1 = w.n_old_1.is_dummy();
    w.dummy_2 = w.n_old_2.is_dummy();
    w.n_new_1 = parts.outputs[0];
    w.n_new_2 = parts.outputs[1];

    if (parts.evidence) {
        const SiblingEvidence& ev = *parts.evidence;
        auto pos3 = tree.find(ev.primary.cm);
        if (!pos3) throw TransactionError("paired primary commitment is not on the ledger");
        const Digest32 nf3 = prf_nf(ev.a_sk, ev.primary.rho);
        auto pos4 = tree.find(nf3);
        if (!pos4) throw TransactionError("paired primary has not been spent");
        w.path_3 = tree.path(*pos3);
        w.n_old_3 = ev.primary;
        w.a_sk_3 = ev.a_sk;
        w.path_4 = tree.path(*pos4);
        w.nf_old_3 = nf3;
    } else {
        w.path_3 = zero_path(depth);
        w.n_old_3 = Note{};
        w.path_4 = zero_path(depth);
    }
    return {chi, w};
}

InputSpend make_dummy_input(Rng& rng) {
    SpendingKey k{rng.next_field_digest()};
    Note n = make_dummy_note(prf_addr(k), rng.next_field_digest(), rng.next_field_digest());
    return InputSpend{n, k};
}

BuildResult build_joinsplit(const r1cs::SetupParams& params, const CombinedTree& tree,
                            Height block_n, const BuildRequest& req, Rng& rng) {
    return build_joinsplit_with(params, tree, block_n, req, rng,
                                [&params](const PublicInput& chi, const Witness& omega) {
                                    return r1cs::prove(params.pk_joinsplit, chi, omega);
                                });
}

BuildResult build_joinsplit_with(const r1cs::SetupParams& /*params*/, const CombinedTree& tree,
                                 Height block_n, const BuildRequest& req, Rng& rng,
                                 const ProveFn& prove_fn) {
    const Nullifier nf1 = input_nullifier(req.inputs[0]);
    const Nullifier nf2 = input_nullifier(req.inputs[1]);
    if (nf1 == nf2) throw TransactionError("both inputs have the same nullifier");

    const SignatureKeypair sig = signature_keypair(rng.next_digest());
    const Digest32 h_sig = compute_h_sig(nf1.nf, nf2.nf, sig.pk_sig);

    StatementParts parts;
    parts.inputs = req.inputs;
    parts.phi = rng.next_field_digest();
    parts.h_sig = h_sig;
    parts.v_pub_old = req.v_pub_old;
    parts.v_pub_new = req.v_pub_new;
    parts.evidence = req.evidence;

    std::array<PaymentAddress, 2> owners;
    for (int j = 0; j < 2; ++j) {
        const OutputSpec& spec = req.outputs[j];
        owners[j] = spec.to.resolve(h_sig);
        Note n;
        n.a_pk = owners[j].a_pk;
        n.s = spec.s;
        n.color1 = spec.color1;
        n.v1 = spec.v1;
        n.color2 = spec.color2;
        n.v2 = spec.v2;
        n.bt = spec.bt;
        n.rho = prf_rho(parts.phi, j + 1, h_sig);
        n.gamma = rng.next_field_digest();
        n.pair_tag = h_sig;
        try {
            parts.outputs[j] = seal_note(n);
        } catch (const NoteError& e) {
            throw TransactionError(std::string("invalid output note: ") + e.what());
        }
    }

    const CaseId c = classify_case(req.inputs[0].note, req.inputs[1].note, parts.outputs[0],
                                   parts.outputs[1]);
    if (req.intent && *req.intent != c) {
        throw TransactionError(std::string("notes classify as ") + std::string(case_name(c)) +
                               ", not " + std::string(case_name(*req.intent)));
    }

    parts.h_1 = prf_spend_auth(req.inputs[0].a_sk, 1, h_sig);
    parts.h_2 = prf_spend_auth(req.inputs[1].a_sk, 2, h_sig);

    JoinSplitTransaction tx;
    tx.enc_note_1 = encrypt_to(owners[0], parts.outputs[0], rng);
    tx.enc_note_2 = encrypt_to(owners[1], parts.outputs[1], rng);

    auto [chi, omega] = assemble_statement(tree, block_n, parts);
    tx.proof = prove_fn(chi, omega);

    tx.rt = chi.rt;
    tx.nf_old_1 = chi.nf_old_1;
    tx.nf_old_2 = chi.nf_old_2;
    tx.cm_new_1 = chi.cm_new_1;
    tx.cm_new_2 = chi.cm_new_2;
    tx.v_pub_old = chi.v_pub_old;
    tx.v_pub_new = chi.v_pub_new;
    tx.h_sig = h_sig;
    tx.memo = req.memo;
    tx.pk_sig = sig.pk_sig;
    tx.h_1 = chi.h_1;
    tx.h_2 = chi.h_2;
    tx.delta = sign(sig, signing_message(tx, block_n));

    return BuildResult{tx, parts.outputs[0], parts.outputs[1], c};
}

Fe mint_scalars(Color color, Amount value) {
    Note n;
    n.color1 = color;
    n.v1 = value;
    return pack_note_scalars(n);
}

std::pair<MintTransaction, Note> build_mint(const PaymentAddress& recipient, Color color,
                                            Amount value, Rng& rng) {
    if (color == kDummyColor) throw TransactionError("color 0 is reserved for dummy notes");
    Note n = make_plain_note(recipient.a_pk, Asset{color, value}, rng.next_field_digest(),
                             rng.next_field_digest(), Digest32{});
    MintTransaction tx;
    tx.cm = n.cm;
    tx.color = color;
    tx.value = value;
    tx.inner = Digest32::from_fe(commitment_inner(n));
    tx.enc_note = encrypt_to(recipient, n, rng);
    return {tx, n};
}

}  // namespace omap
