#include "omap/r1cs/gadgets.hpp"

#include "omap/primitives.hpp"

namespace omap::r1cs {

Fe pow2(unsigned i) {
    Fe::Limbs l{};
    l[i / 64] = std::uint64_t{1} << (i % 64);
    return Fe::from_limbs_reduce(l);
}

void assert_boolean(ConstraintSystem& cs, const LC& x) {
    cs.add(x, LC::constant(1) - x, LC{});
}

void assert_linear_sum(ConstraintSystem& cs, std::span<const std::pair<Fe, Variable>> terms,
                       const LC& target) {
    LC sum;
    for (const auto& [coeff, var] : terms) sum.add_term(var, coeff);
    cs.add(sum - target, LC::constant(1), LC{});
}

void assert_equal(ConstraintSystem& cs, const LC& a, const LC& b) {
    cs.add(a - b, LC::constant(1), LC{});
}

void assert_zero_when(ConstraintSystem& cs, const LC& gate, const LC& expr) {
    cs.add(gate, expr, LC{});
}

Variable product(Protoboard& pb, const LC& a, const LC& b) {
    Variable t = pb.allocate_aux();
    pb.add(a, b, t);
    pb.on_witness([a, b, t](Assignment& w) { w[t.index] = a.evaluate(w) * b.evaluate(w); });
    return t;
}

Swapped swap_if(Protoboard& pb, Variable bit, const LC& x1, const LC& x2) {
    Variable t = product(pb, bit, x2 - x1);
    return {x1 + t, x2 - LC(t)};
}

LC Bits::packed() const {
    LC lc;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        lc.add_term(bits[i], pow2(static_cast<unsigned>(i)));
    }
    return lc;
}

Bits decompose(Protoboard& pb, const LC& value, unsigned n) {
    Bits out;
    out.bits.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        Variable b = pb.allocate_aux();
        assert_boolean(pb.cs(), b);
        out.bits.push_back(b);
    }
    pb.add(out.packed(), LC::constant(1), value);
    pb.on_witness([value, vars = out.bits](Assignment& w) {
        const auto limbs = value.evaluate(w).to_canonical();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const bool bit = (limbs[i / 64] >> (i % 64)) & 1;
            w[vars[i].index] = bit ? Fe::one() : Fe::zero();
        }
    });
    return out;
}

void assert_leq_bits(Protoboard& pb, const LC& x, const LC& y, unsigned bits) {
    decompose(pb, y - x, bits);
}

Variable less_or_equal(Protoboard& pb, const LC& x, const LC& y, unsigned bits) {
    // 2^bits + y - x lies in [0, 2^(bits+1)); its top bit is set iff y >= x.
    Bits d = decompose(pb, LC::constant(pow2(bits)) + y - x, bits + 1);
    return d.bits.back();
}

Variable is_zero(Protoboard& pb, const LC& x) {
    Variable z = pb.allocate_aux();
    Variable inv = pb.allocate_aux();
    pb.add(x, inv, LC::constant(1) - LC(z));
    pb.add(x, z, LC{});
    pb.on_witness([x, z, inv](Assignment& w) {
        Fe v = x.evaluate(w);
        w[z.index] = v.is_zero() ? Fe::one() : Fe::zero();
        w[inv.index] = v.inverse();
    });
    return z;
}

Variable mimc_compress(Protoboard& pb, const LC& h, const LC& m) {
    const auto& c = mimc::round_constants();
    std::vector<Variable> trace;
    trace.reserve(3 * mimc::kRounds);
    LC x = m;
    for (std::size_t i = 0; i < mimc::kRounds; ++i) {
        LC t = x + h + LC::constant(c[i]);
        Variable t2 = pb.allocate_aux();
        Variable t4 = pb.allocate_aux();
        Variable x5 = pb.allocate_aux();
        pb.add(t, t, t2);
        pb.add(t2, t2, t4);
        pb.add(t4, t, x5);
        trace.push_back(t2);
        trace.push_back(t4);
        trace.push_back(x5);
        x = x5;
    }
    Variable out = pb.allocate_aux();
    // E_h(m) + h + m = x_R + 2h + m
    pb.add(x + h + h + m, LC::constant(1), out);

    pb.on_witness([h, m, trace = std::move(trace), out](Assignment& w) {
        const auto& rc = mimc::round_constants();
        const Fe hv = h.evaluate(w);
        const Fe mv = m.evaluate(w);
        Fe xv = mv;
        for (std::size_t i = 0; i < mimc::kRounds; ++i) {
            Fe t = xv + hv + rc[i];
            Fe t2 = t.square();
            Fe t4 = t2.square();
            xv = t4 * t;
            w[trace[3 * i].index] = t2;
            w[trace[3 * i + 1].index] = t4;
            w[trace[3 * i + 2].index] = xv;
        }
        w[out.index] = xv + hv + hv + mv;
    });
    return out;
}

Variable hash_c(Protoboard& pb, std::uint8_t domain, std::span<const LC> inputs) {
    LC state = LC::constant(mimc::initial_state(domain, inputs.size()));
    Variable out{};
    if (inputs.empty()) {
        out = pb.allocate_aux();
        pb.add(state, LC::constant(1), out);
        pb.on_witness([state, out](Assignment& w) { w[out.index] = state.evaluate(w); });
        return out;
    }
    for (const auto& in : inputs) {
        out = mimc_compress(pb, state, in);
        state = out;
    }
    return out;
}

void assert_hash_preimage(Protoboard& pb, const LC& out, std::uint8_t domain,
                          std::span<const LC> inputs) {
    Variable h = hash_c(pb, domain, inputs);
    assert_equal(pb.cs(), out, h);
}

LC MerklePathVars::position() const {
    Bits b{pos_bits};
    return b.packed();
}

MerklePathVars allocate_merkle_path(Protoboard& pb, std::size_t depth) {
    MerklePathVars p;
    for (std::size_t i = 0; i < depth; ++i) p.siblings.push_back(pb.allocate_aux());
    for (std::size_t i = 0; i < depth; ++i) {
        Variable b = pb.allocate_aux();
        assert_boolean(pb.cs(), b);
        p.pos_bits.push_back(b);
    }
    return p;
}

LC merkle_root(Protoboard& pb, const LC& leaf, const MerklePathVars& path) {
    static const Fe kTweak = mimc::initial_state(tag::kMerkleNode, 2);
    LC cur = leaf;
    for (std::size_t l = 0; l < path.siblings.size(); ++l) {
        const LC sib = path.siblings[l];
        // bit = 0: (cur, sib); bit = 1: (sib, cur)
        Variable t = product(pb, path.pos_bits[l], sib - cur);
        LC left = cur + t;
        LC right = sib - LC(t);
        cur = mimc_compress(pb, left + LC::constant(kTweak), right);
    }
    return cur;
}

void assert_merkle_path(Protoboard& pb, const LC& root, const LC& leaf,
                        const MerklePathVars& path) {
    assert_equal(pb.cs(), merkle_root(pb, leaf, path), root);
}

}  // namespace omap::r1cs
