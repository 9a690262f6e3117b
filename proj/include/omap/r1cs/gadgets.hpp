#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "omap/r1cs/constraint_system.hpp"

namespace omap::r1cs {

using LC = LinearCombination;

/// 2^i as a field element, i < 256.
Fe pow2(unsigned i);

// --- pure constraints --------------------------------------------------------

/// x * (1 - x) = 0
void assert_boolean(ConstraintSystem& cs, const LC& x);
/// (sum coeff_i * var_i - target) * 1 = 0
void assert_linear_sum(ConstraintSystem& cs, std::span<const std::pair<Fe, Variable>> terms,
                       const LC& target);
void assert_equal(ConstraintSystem& cs, const LC& a, const LC& b);
/// gate * expr = 0: `expr` must vanish whenever `gate` is 1.
void assert_zero_when(ConstraintSystem& cs, const LC& gate, const LC& expr);

// --- gadgets with witness generation -----------------------------------------

/// t = a * b
Variable product(Protoboard& pb, const LC& a, const LC& b);

/// (x1, x2) when bit = 0, (x2, x1) when bit = 1; one product constraint.
struct Swapped {
    LC first;
    LC second;
};
Swapped swap_if(Protoboard& pb, Variable bit, const LC& x1, const LC& x2);

struct Bits {
    std::vector<Variable> bits;  // least significant first
    LC packed() const;
};

/// Boolean bits with sum bits_i 2^i = value; forces value < 2^n.
Bits decompose(Protoboard& pb, const LC& value, unsigned n);

/// Range check value < 2^n.
inline void assert_bits(Protoboard& pb, const LC& value, unsigned n) { decompose(pb, value, n); }

/// Forces x <= y for x, y < 2^bits by decomposing y - x into `bits` bits.
void assert_leq_bits(Protoboard& pb, const LC& x, const LC& y, unsigned bits = 32);

/// Boolean result, 1 iff x <= y, for x, y < 2^bits.
Variable less_or_equal(Protoboard& pb, const LC& x, const LC& y, unsigned bits);

/// Boolean result, 1 iff x = 0.
Variable is_zero(Protoboard& pb, const LC& x);

/// MiMC-5 Miyaguchi-Preneel step; 3 constraints per round plus the output.
Variable mimc_compress(Protoboard& pb, const LC& h, const LC& m);

/// Output variable constrained to H_c(domain; inputs).
Variable hash_c(Protoboard& pb, std::uint8_t domain, std::span<const LC> inputs);

/// Constrains `out` to equal H_c(domain; inputs).
void assert_hash_preimage(Protoboard& pb, const LC& out, std::uint8_t domain,
                          std::span<const LC> inputs);

/// Witness variables of one Merkle path: siblings (leaf level first) and the
/// boolean-constrained bits of the leaf position. The caller assigns both.
struct MerklePathVars {
    std::vector<Variable> siblings;
    std::vector<Variable> pos_bits;
    LC position() const;
};

MerklePathVars allocate_merkle_path(Protoboard& pb, std::size_t depth);

/// Root obtained by folding `leaf` through `path`.
LC merkle_root(Protoboard& pb, const LC& leaf, const MerklePathVars& path);

/// root = fold(leaf, path)
void assert_merkle_path(Protoboard& pb, const LC& root, const LC& leaf,
                        const MerklePathVars& path);

}  // namespace omap::r1cs
