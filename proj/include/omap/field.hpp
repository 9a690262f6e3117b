#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace omap {

/// Element of the prime field GF(p), p = 2^255 - 19.
///
/// All circuit arithmetic and the field-native statement hash run over this
/// field. Amounts (64 bits) and heights (32 bits) embed without wrap-around,
/// and sums of a handful of amounts stay far below p.
class Fe {
public:
    using Limbs = std::array<std::uint64_t, 4>;

    constexpr Fe() = default;

    static Fe zero() { return Fe{}; }
    static Fe one();
    static Fe from_u64(std::uint64_t v);
    /// Interprets 32 big-endian bytes as an integer and reduces it mod p.
    static Fe from_bytes_reduce(std::span<const std::uint8_t, 32> be);
    /// Parses 32 big-endian bytes; returns false if the value is not < p.
    static bool from_bytes_canonical(std::span<const std::uint8_t, 32> be, Fe& out);
    static Fe from_limbs_reduce(const Limbs& canonical_le);

    /// Canonical big-endian encoding of the value in [0, p).
    std::array<std::uint8_t, 32> to_bytes() const;
    /// Canonical little-endian limbs of the value in [0, p).
    Limbs to_canonical() const;
    std::string to_hex() const;

    bool is_zero() const { return (m_[0] | m_[1] | m_[2] | m_[3]) == 0; }
    /// True when the canonical value fits in `bits` bits.
    bool fits_bits(unsigned bits) const;
    /// Bit `i` of the canonical value.
    bool bit(unsigned i) const;
    /// Low 64 bits of the canonical value.
    std::uint64_t low_u64() const;

    Fe operator+(const Fe& o) const;
    Fe operator-(const Fe& o) const;
    Fe operator*(const Fe& o) const;
    Fe operator-() const;
    Fe& operator+=(const Fe& o) { return *this = *this + o; }
    Fe& operator-=(const Fe& o) { return *this = *this - o; }
    Fe& operator*=(const Fe& o) { return *this = *this * o; }

    Fe square() const { return *this * *this; }
    Fe pow(const Limbs& exp_le) const;
    /// Multiplicative inverse; zero maps to zero.
    Fe inverse() const;

    friend bool operator==(const Fe& a, const Fe& b) { return a.m_ == b.m_; }
    friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }

    static const Limbs& modulus();

private:
    Limbs m_{};  // little-endian limbs, always < p
};

namespace field_detail {

using Limbs = Fe::Limbs;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr Limbs kP = {0xffffffffffffffedULL, 0xffffffffffffffffULL,
                             0xffffffffffffffffULL, 0x7fffffffffffffffULL};

inline bool geq(const Limbs& a, const Limbs& b) {
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return true;
}

// a - b, assumes a >= b
inline void sub_in_place(Limbs& a, const Limbs& b) {
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
        a[i] = static_cast<u64>(d);
        borrow = static_cast<u64>(d >> 64) & 1;
    }
}

// Schoolbook 4x4 product folded with 2^256 = 38 (mod p).
inline Limbs mul_reduce(const Limbs& a, const Limbs& b) {
    u64 t[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        u64 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = static_cast<u128>(a[i]) * b[j] + t[i + j] + carry;
            t[i + j] = static_cast<u64>(cur);
            carry = static_cast<u64>(cur >> 64);
        }
        t[i + 4] = carry;
    }
    Limbs r;
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 cur = static_cast<u128>(t[i + 4]) * 38 + t[i] + carry;
        r[i] = static_cast<u64>(cur);
        carry = static_cast<u64>(cur >> 64);
    }
    // fold the remaining carry (< 39); if that wraps past 2^256 the value
    // left is tiny and one more +38 finishes
    u128 cur = static_cast<u128>(carry) * 38 + r[0];
    r[0] = static_cast<u64>(cur);
    u64 c = static_cast<u64>(cur >> 64);
    for (int i = 1; i < 4 && c != 0; ++i) {
        cur = static_cast<u128>(r[i]) + c;
        r[i] = static_cast<u64>(cur);
        c = static_cast<u64>(cur >> 64);
    }
    if (c != 0) {
        cur = static_cast<u128>(r[0]) + 38;
        r[0] = static_cast<u64>(cur);
        c = static_cast<u64>(cur >> 64);
        for (int i = 1; i < 4 && c != 0; ++i) {
            cur = static_cast<u128>(r[i]) + c;
            r[i] = static_cast<u64>(cur);
            c = static_cast<u64>(cur >> 64);
        }
    }
    while (geq(r, kP)) sub_in_place(r, kP);
    return r;
}

}  // namespace field_detail

inline Fe Fe::operator+(const Fe& o) const {
    using namespace field_detail;
    Fe r;
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = static_cast<u128>(m_[i]) + o.m_[i] + carry;
        r.m_[i] = static_cast<u64>(s);
        carry = static_cast<u64>(s >> 64);
    }
    if (geq(r.m_, kP)) sub_in_place(r.m_, kP);
    return r;
}

inline Fe Fe::operator-(const Fe& o) const {
    using namespace field_detail;
    Fe r = *this;
    if (geq(m_, o.m_)) {
        sub_in_place(r.m_, o.m_);
    } else {
        // (a + p) - b; a + p < 2^256 since both are < 2^255.
        u64 carry = 0;
        for (int i = 0; i < 4; ++i) {
            u128 s = static_cast<u128>(r.m_[i]) + kP[i] + carry;
            r.m_[i] = static_cast<u64>(s);
            carry = static_cast<u64>(s >> 64);
        }
        sub_in_place(r.m_, o.m_);
    }
    return r;
}

inline Fe Fe::operator*(const Fe& o) const {
    Fe r;
    r.m_ = field_detail::mul_reduce(m_, o.m_);
    return r;
}

}  // namespace omap
