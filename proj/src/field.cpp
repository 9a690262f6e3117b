#include "omap/field.hpp"

namespace omap {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr const Fe::Limbs& kP = field_detail::kP;
using field_detail::geq;
using field_detail::sub_in_place;

Fe::Limbs reduce_256(Fe::Limbs v) {
    // v < 2^256 < 3p, so at most two subtractions are needed.
    while (geq(v, kP)) sub_in_place(v, kP);
    return v;
}

Fe::Limbs limbs_from_be(std::span<const std::uint8_t, 32> be) {
    Fe::Limbs v{};
    for (int i = 0; i < 32; ++i) {
        v[3 - i / 8] = (v[3 - i / 8] << 8) | be[i];
    }
    return v;
}

}  // namespace

const Fe::Limbs& Fe::modulus() { return kP; }

Fe Fe::one() {
    static const Fe kOne = from_u64(1);
    return kOne;
}

Fe Fe::from_u64(std::uint64_t v) { return from_limbs_reduce(Limbs{v, 0, 0, 0}); }

Fe Fe::from_limbs_reduce(const Limbs& canonical_le) {
    Fe r;
    r.m_ = reduce_256(canonical_le);
    return r;
}

Fe Fe::from_bytes_reduce(std::span<const std::uint8_t, 32> be) {
    return from_limbs_reduce(limbs_from_be(be));
}

bool Fe::from_bytes_canonical(std::span<const std::uint8_t, 32> be, Fe& out) {
    Limbs v = limbs_from_be(be);
    if (geq(v, kP)) return false;
    out.m_ = v;
    return true;
}

std::array<std::uint8_t, 32> Fe::to_bytes() const {
    Limbs v = m_;
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 32; ++i) {
        out[31 - i] = static_cast<std::uint8_t>(v[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

Fe::Limbs Fe::to_canonical() const { return m_; }

std::string Fe::to_hex() const {
    static const char* kDigits = "0123456789abcdef";
    std::string s;
    for (auto b : to_bytes()) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 15]);
    }
    return s;
}

bool Fe::fits_bits(unsigned bits) const {
    Limbs v = m_;
    for (unsigned i = bits; i < 256; ++i) {
        if ((v[i / 64] >> (i % 64)) & 1) return false;
    }
    return true;
}

bool Fe::bit(unsigned i) const {
    if (i >= 256) return false;
    Limbs v = m_;
    return (v[i / 64] >> (i % 64)) & 1;
}

std::uint64_t Fe::low_u64() const { return m_[0]; }

Fe Fe::operator-() const { return Fe{} - *this; }

Fe Fe::pow(const Limbs& exp_le) const {
    Fe result = one();
    for (int i = 255; i >= 0; --i) {
        result = result.square();
        if ((exp_le[i / 64] >> (i % 64)) & 1) result *= *this;
    }
    return result;
}

Fe Fe::inverse() const {
    Limbs e = kP;
    e[0] -= 2;
    return pow(e);
}

}  // namespace omap
