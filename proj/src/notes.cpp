#include "omap/notes.hpp"

#include <algorithm>

namespace omap {
namespace {

template <typename T>
void put_be(std::uint8_t*& p, T v) {
    for (int i = static_cast<int>(sizeof(T)) - 1; i >= 0; --i) {
        *p++ = static_cast<std::uint8_t>(v >> (8 * i));
    }
}

template <typename T>
T get_be(const std::uint8_t*& p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | *p++);
    return v;
}

void put_digest(std::uint8_t*& p, const Digest32& d) {
    p = std::copy(d.bytes.begin(), d.bytes.end(), p);
}

Digest32 get_digest(const std::uint8_t*& p) {
    Digest32 d;
    std::copy(p, p + 32, d.bytes.begin());
    p += 32;
    return d;
}

// Sets `width` bits of `value` at bit offset `shift` in little-endian limbs.
void or_bits(Fe::Limbs& limbs, std::uint64_t value, unsigned shift) {
    unsigned word = shift / 64;
    unsigned off = shift % 64;
    limbs[word] |= value << off;
    if (off != 0 && word + 1 < 4) limbs[word + 1] |= value >> (64 - off);
}

}  // namespace

NoteBytes serialize_note(const Note& n) {
    NoteBytes out{};
    std::uint8_t* p = out.data();
    put_digest(p, n.a_pk);
    *p++ = n.s;
    put_be(p, n.color1);
    put_be(p, n.v1);
    put_be(p, n.color2);
    put_be(p, n.v2);
    put_be(p, n.bt);
    put_digest(p, n.rho);
    put_digest(p, n.gamma);
    put_digest(p, n.pair_tag);
    return out;
}

Note deserialize_note(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kNoteBytes) throw NoteError("note encoding must be 165 bytes");
    if (!std::all_of(bytes.begin() + kNoteContentBytes, bytes.end(),
                     [](std::uint8_t b) { return b == 0; })) {
        throw NoteError("note padding must be zero");
    }
    const std::uint8_t* p = bytes.data();
    Note n;
    n.a_pk = get_digest(p);
    n.s = *p++;
    if (n.s > 1) throw NoteError("note flag must be 0 or 1");
    n.color1 = get_be<Color>(p);
    n.v1 = get_be<Amount>(p);
    n.color2 = get_be<Color>(p);
    n.v2 = get_be<Amount>(p);
    n.bt = get_be<Height>(p);
    n.rho = get_digest(p);
    n.gamma = get_digest(p);
    n.pair_tag = get_digest(p);
    if (!note_invariant_violation(n)) n.cm = commit_note(n);
    return n;
}

std::optional<std::string> note_invariant_violation(const Note& n) {
    if (n.s > 1) return "flag s must be 0 or 1";
    if ((n.color2 == 0) != (n.v2 == 0)) return "debt color and value must be zero together";
    if (n.s == 1 && n.v2 != 0) return "sibling note carries no debt";
    if (n.color1 == kDummyColor && (n.v1 != 0 || n.v2 != 0 || n.color2 != 0 || n.s != 0)) {
        return "dummy note must be all-zero";
    }
    return std::nullopt;
}

Fe pack_note_scalars(const Note& n) {
    Fe::Limbs l{};
    or_bits(l, n.s, 0);
    or_bits(l, n.color1, 1);
    or_bits(l, n.v1, 33);
    or_bits(l, n.color2, 97);
    or_bits(l, n.v2, 129);
    or_bits(l, n.bt, 193);
    return Fe::from_limbs_reduce(l);
}

Fe commitment_inner(const Note& n) {
    Fe h = mimc::initial_state(tag::kCommit, 5);
    h = mimc::compress(h, n.a_pk.to_fe());
    h = mimc::compress(h, n.rho.to_fe());
    h = mimc::compress(h, n.gamma.to_fe());
    h = mimc::compress(h, n.pair_tag.to_fe());
    return h;
}

Digest32 commit_from_inner(const Fe& inner, const Fe& packed) {
    return Digest32::from_fe(mimc::compress(inner, packed));
}

Digest32 commit_note(const Note& n) {
    if (auto err = note_invariant_violation(n)) throw NoteError(*err);
    return commit_from_inner(commitment_inner(n), pack_note_scalars(n));
}

Note seal_note(Note n) {
    n.cm = commit_note(n);
    return n;
}

Note make_dummy_note(const Digest32& a_pk, const Digest32& rho, const Digest32& gamma) {
    Note n;
    n.a_pk = a_pk;
    n.rho = rho;
    n.gamma = gamma;
    return seal_note(n);
}

Note make_plain_note(const Digest32& a_pk, Asset asset, const Digest32& rho,
                     const Digest32& gamma, const Digest32& pair_tag) {
    Note n;
    n.a_pk = a_pk;
    n.color1 = asset.color;
    n.v1 = asset.amount;
    n.rho = rho;
    n.gamma = gamma;
    n.pair_tag = pair_tag;
    return seal_note(n);
}

NotePair make_exchange_pair(const Digest32& a_pk_shared, const Digest32& a_pk_self, Asset give,
                            Asset ask, Height bt, const Digest32& h_sig, const Digest32& phi,
                            const Digest32& gamma_primary, const Digest32& gamma_sibling) {
    if (give.amount == 0 || ask.amount == 0) throw NoteError("exchange amounts must be positive");
    if (give.color == kDummyColor || ask.color == kDummyColor) {
        throw NoteError("exchange colors must be nonzero");
    }
    NotePair pair;
    Note& p = pair.primary;
    p.a_pk = a_pk_shared;
    p.s = 0;
    p.color1 = give.color;
    p.v1 = give.amount;
    p.color2 = ask.color;
    p.v2 = ask.amount;
    p.bt = bt;
    p.rho = prf_rho(phi, 1, h_sig);
    p.gamma = gamma_primary;
    p.pair_tag = h_sig;

    Note& q = pair.sibling;
    q.a_pk = a_pk_self;
    q.s = 1;
    q.color1 = ask.color;
    q.v1 = ask.amount;
    q.bt = bt;
    q.rho = prf_rho(phi, 2, h_sig);
    q.gamma = gamma_sibling;
    q.pair_tag = h_sig;

    p = seal_note(p);
    q = seal_note(q);
    return pair;
}

bool is_valid_pair(const NotePair& pair) {
    const Note& p = pair.primary;
    const Note& q = pair.sibling;
    return p.s == 0 && q.s == 1 && p.pair_tag == q.pair_tag && p.bt == q.bt &&
           p.color2 == q.color1 && p.v2 == q.v1 && q.v2 == 0 && q.color2 == 0 && p.v2 > 0;
}

Nullifier nullifier_of(const Note& n, const SpendingKey& a_sk) {
    if (prf_addr(a_sk) != n.a_pk) throw NoteError("spending key does not own the note");
    return Nullifier{prf_nf(a_sk, n.rho)};
}

}  // namespace omap
