#include "omap/primitives.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

namespace omap {
namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
    });
}

class Sha256 {
public:
    Sha256() {
        ensure_sodium();
        crypto_hash_sha256_init(&st_);
    }
    Sha256& put(std::span<const std::uint8_t> d) {
        crypto_hash_sha256_update(&st_, d.data(), d.size());
        return *this;
    }
    Sha256& put(std::uint8_t b) { return put(std::span<const std::uint8_t>(&b, 1)); }
    Sha256& put(const Digest32& d) { return put(std::span<const std::uint8_t>(d.bytes)); }
    Digest32 finish() {
        Digest32 out;
        crypto_hash_sha256_final(&st_, out.bytes.data());
        return out;
    }

private:
    crypto_hash_sha256_state st_{};
};

void check_index(int index) {
    if (index != 1 && index != 2) throw PrimitiveError("note index must be 1 or 2");
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
    static const char* kDigits = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (auto b : data) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 15]);
    }
    return s;
}

Digest32 Digest32::from_hex(std::string_view hex) {
    if (hex.size() != 64) throw PrimitiveError("digest hex must be 64 characters");
    Digest32 d;
    for (std::size_t i = 0; i < 32; ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw PrimitiveError("invalid hex digit");
        d.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return d;
}

bool Digest32::is_zero() const {
    for (auto b : bytes) {
        if (b != 0) return false;
    }
    return true;
}

std::string Digest32::hex() const { return to_hex(bytes); }

Digest32 crh(std::span<const std::uint8_t> data) { return Sha256().put(data).finish(); }

Digest32 compute_h_sig(const Digest32& nf1, const Digest32& nf2,
                       std::span<const std::uint8_t> pk_sig) {
    return Sha256().put(nf1).put(nf2).put(pk_sig).finish();
}

Digest32 prf_spend_auth(const SpendingKey& a_sk, int index, const Digest32& h_sig) {
    check_index(index);
    return Sha256()
        .put(tag::kSpendAuth)
        .put(static_cast<std::uint8_t>(index))
        .put(a_sk.a_sk)
        .put(h_sig)
        .finish();
}

SpendingKey derive_shared_spending_key(std::span<const std::uint8_t> shared_secret,
                                       const Digest32& h_sig) {
    if (shared_secret.empty()) throw PrimitiveError("shared secret must be non-empty");
    Digest32 raw = Sha256().put(tag::kShared).put(shared_secret).put(h_sig).finish();
    return SpendingKey{Digest32::from_fe(raw.to_fe())};
}

// ---------------------------------------------------------------------------

namespace mimc {

const std::array<Fe, kRounds>& round_constants() {
    static const std::array<Fe, kRounds> kConstants = [] {
        std::array<Fe, kRounds> c{};
        static constexpr char kLabel[] = "omap.mimc5";
        for (std::size_t i = 1; i < kRounds; ++i) {
            std::uint8_t buf[sizeof(kLabel) - 1 + 4];
            std::memcpy(buf, kLabel, sizeof(kLabel) - 1);
            for (int b = 0; b < 4; ++b) {
                buf[sizeof(kLabel) - 1 + b] = static_cast<std::uint8_t>(i >> (24 - 8 * b));
            }
            c[i] = crh(buf).to_fe();
        }
        return c;
    }();
    return kConstants;
}

Fe encrypt(const Fe& key, Fe x) {
    const auto& c = round_constants();
    for (std::size_t i = 0; i < kRounds; ++i) {
        Fe t = x + key + c[i];
        Fe t2 = t.square();
        x = t2.square() * t;
    }
    return x + key;
}

Fe compress(const Fe& h, const Fe& m) { return encrypt(h, m) + h + m; }

Fe initial_state(std::uint8_t domain, std::size_t arity) {
    return Fe::from_u64(static_cast<std::uint64_t>(domain) |
                        (static_cast<std::uint64_t>(arity) << 8));
}

}  // namespace mimc

Fe hash_c(std::uint8_t domain, std::span<const Fe> elems) {
    Fe h = mimc::initial_state(domain, elems.size());
    for (const auto& m : elems) h = mimc::compress(h, m);
    return h;
}

Fe merkle_node_fe(const Fe& left, const Fe& right) {
    static const Fe kTweak = mimc::initial_state(tag::kMerkleNode, 2);
    return mimc::compress(left + kTweak, right);
}

Fe merkle_empty_leaf_fe() {
    static const Fe kEmpty = hash_c(tag::kMerkleEmpty, {});
    return kEmpty;
}

Digest32 prf_addr(const SpendingKey& a_sk) {
    const Fe in[2] = {a_sk.a_sk.to_fe(), Fe::zero()};
    return Digest32::from_fe(hash_c(tag::kAddr, in));
}

Digest32 prf_nf(const SpendingKey& a_sk, const Digest32& rho) {
    const Fe in[2] = {a_sk.a_sk.to_fe(), rho.to_fe()};
    return Digest32::from_fe(hash_c(tag::kNullifier, in));
}

Digest32 prf_rho(const Digest32& phi, int index, const Digest32& h_sig) {
    check_index(index);
    const Fe in[3] = {Fe::from_u64(static_cast<std::uint64_t>(index)), phi.to_fe(), h_sig.to_fe()};
    return Digest32::from_fe(hash_c(tag::kRho, in));
}

// ---------------------------------------------------------------------------

PaymentAddress derive_address(const SpendingKey& a_sk) {
    ensure_sodium();
    PaymentAddress addr;
    addr.a_pk = prf_addr(a_sk);
    Digest32 seed = Sha256().put(tag::kEncKey).put(a_sk.a_sk).finish();
    crypto_box_seed_keypair(addr.enc_pk.data(), addr.enc_sk.data(), seed.bytes.data());
    return addr;
}

SignatureKeypair signature_keypair(const Digest32& seed) {
    ensure_sodium();
    SignatureKeypair kp;
    crypto_sign_seed_keypair(kp.pk_sig.data(), kp.sk_sig.data(), seed.bytes.data());
    return kp;
}

std::array<std::uint8_t, kSignatureBytes> sign(const SignatureKeypair& kp,
                                               std::span<const std::uint8_t> m) {
    std::array<std::uint8_t, kSignatureBytes> sig{};
    crypto_sign_detached(sig.data(), nullptr, m.data(), m.size(), kp.sk_sig.data());
    return sig;
}

bool verify_sig(std::span<const std::uint8_t> pk_sig, std::span<const std::uint8_t> m,
                std::span<const std::uint8_t> sig) {
    ensure_sodium();
    if (pk_sig.size() != kSigPublicKeyBytes || sig.size() != kSignatureBytes) return false;
    return crypto_sign_verify_detached(sig.data(), m.data(), m.size(), pk_sig.data()) == 0;
}

namespace {

std::array<std::uint8_t, crypto_box_NONCEBYTES> note_nonce(std::span<const std::uint8_t> eph_pk,
                                                          std::span<const std::uint8_t> enc_pk) {
    Digest32 d = Sha256().put(eph_pk).put(enc_pk).finish();
    std::array<std::uint8_t, crypto_box_NONCEBYTES> n{};
    std::memcpy(n.data(), d.bytes.data(), n.size());
    return n;
}

}  // namespace

Bytes encrypt_note(std::span<const std::uint8_t, 32> enc_pk,
                   std::span<const std::uint8_t> plaintext, const Digest32& eph_seed) {
    ensure_sodium();
    std::array<std::uint8_t, 32> eph_pk{}, eph_sk{};
    crypto_box_seed_keypair(eph_pk.data(), eph_sk.data(), eph_seed.bytes.data());
    auto nonce = note_nonce(eph_pk, enc_pk);

    Bytes out(32 + crypto_box_MACBYTES + plaintext.size());
    std::memcpy(out.data(), eph_pk.data(), 32);
    if (crypto_box_easy(out.data() + 32, plaintext.data(), plaintext.size(), nonce.data(),
                        enc_pk.data(), eph_sk.data()) != 0) {
        throw std::runtime_error("note encryption failed");
    }
    sodium_memzero(eph_sk.data(), eph_sk.size());
    return out;
}

std::optional<Bytes> decrypt_note(std::span<const std::uint8_t, 32> enc_sk,
                                  std::span<const std::uint8_t> ciphertext) {
    ensure_sodium();
    if (ciphertext.size() < kEncOverhead) return std::nullopt;
    std::array<std::uint8_t, 32> my_pk{};
    crypto_scalarmult_base(my_pk.data(), enc_sk.data());
    auto eph_pk = ciphertext.first(32);
    auto nonce = note_nonce(eph_pk, my_pk);

    Bytes out(ciphertext.size() - kEncOverhead);
    if (crypto_box_open_easy(out.data(), ciphertext.data() + 32, ciphertext.size() - 32,
                             nonce.data(), eph_pk.data(), enc_sk.data()) != 0) {
        return std::nullopt;
    }
    return out;
}

Digest32 hmac_sha256(std::span<const std::uint8_t, 32> key, std::span<const std::uint8_t> m) {
    ensure_sodium();
    Digest32 out;
    crypto_auth_hmacsha256_state st;
    crypto_auth_hmacsha256_init(&st, key.data(), key.size());
    crypto_auth_hmacsha256_update(&st, m.data(), m.size());
    crypto_auth_hmacsha256_final(&st, out.bytes.data());
    return out;
}

// ---------------------------------------------------------------------------

Rng::Rng(std::uint64_t seed) {
    std::uint8_t buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    key_ = crh(buf);
}

Digest32 Rng::next_digest() {
    std::uint8_t ctr[8];
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
    ++counter_;
    return Sha256().put(key_).put(ctr).finish();
}

Digest32 Rng::next_field_digest() {
    for (;;) {
        Digest32 d = next_digest();
        d.bytes[0] &= 0x7f;
        Fe f;
        if (Fe::from_bytes_canonical(d.bytes, f)) return d;
    }
}

std::uint64_t Rng::next_u64() {
    Digest32 d = next_digest();
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d.bytes[i];
    return v;
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo) return lo;
    std::uint64_t span = hi - lo + 1;
    if (span == 0) return next_u64();
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
    for (;;) {
        std::uint64_t v = next_u64();
        if (v < limit) return lo + v % span;
    }
}

Rng Rng::fork(std::uint64_t label) {
    std::uint8_t buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(label >> (56 - 8 * i));
    return Rng(Sha256().put(next_digest()).put(buf).finish());
}

}  // namespace omap
