#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "omap/field.hpp"

namespace omap::r1cs {

/// Index into the variable vector. Variable 0 is the constant 1; public
/// inputs follow, then auxiliary (witness) variables.
struct Variable {
    std::uint32_t index = 0;
};

inline constexpr Variable kOne{0};

struct Term {
    std::uint32_t index;
    Fe coeff;
};

using Assignment = std::vector<Fe>;

class LinearCombination {
public:
    LinearCombination() = default;
    LinearCombination(Variable v) { terms_.push_back({v.index, Fe::one()}); }
    static LinearCombination constant(const Fe& c);
    static LinearCombination constant(std::uint64_t c) { return constant(Fe::from_u64(c)); }

    LinearCombination& add_term(Variable v, const Fe& coeff);
    LinearCombination& operator+=(const LinearCombination& o);
    LinearCombination& operator-=(const LinearCombination& o);
    LinearCombination& operator*=(const Fe& k);

    Fe evaluate(std::span<const Fe> w) const;
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

LinearCombination operator+(LinearCombination a, const LinearCombination& b);
LinearCombination operator-(LinearCombination a, const LinearCombination& b);
LinearCombination operator*(LinearCombination a, const Fe& k);
LinearCombination operator*(const Fe& k, LinearCombination a);

/// <a,w> * <b,w> = <c,w>
struct Constraint {
    LinearCombination a;
    LinearCombination b;
    LinearCombination c;

    bool is_satisfied(std::span<const Fe> w) const;
};

class ConstraintSystem {
public:
    ConstraintSystem() = default;

    /// Public inputs must all be allocated before the first auxiliary variable.
    Variable allocate_public();
    Variable allocate_aux();

    void add(LinearCombination a, LinearCombination b, LinearCombination c);

    std::size_t num_public() const { return num_public_; }
    std::size_t num_aux() const { return num_aux_; }
    std::size_t num_variables() const { return 1 + num_public_ + num_aux_; }
    std::size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    /// Fresh assignment of the right size with w[0] = 1.
    Assignment make_assignment() const;

    bool is_satisfied(std::span<const Fe> w) const;

private:
    std::vector<Constraint> constraints_;
    std::size_t num_public_ = 0;
    std::size_t num_aux_ = 0;
};

// Satisfaction kernels. Both return the index of the lowest-numbered
// unsatisfied constraint, or nullopt when every constraint holds.

/// Straight loop; the reference the parallel kernel is tested against.
std::optional<std::size_t> first_unsatisfied_serial(const ConstraintSystem& cs,
                                                    std::span<const Fe> w);
/// OpenMP-parallel over constraints.
std::optional<std::size_t> first_unsatisfied_parallel(const ConstraintSystem& cs,
                                                      std::span<const Fe> w);

/// Constraint system plus the ordered witness-generation steps of the gadgets
/// that built it. Running the steps in order on an assignment whose inputs
/// are set fills every auxiliary variable.
class Protoboard {
public:
    using WitnessStep = std::function<void(Assignment&)>;

    ConstraintSystem& cs() { return cs_; }
    const ConstraintSystem& cs() const { return cs_; }

    Variable allocate_public() { return cs_.allocate_public(); }
    Variable allocate_aux() { return cs_.allocate_aux(); }
    void add(LinearCombination a, LinearCombination b, LinearCombination c) {
        cs_.add(std::move(a), std::move(b), std::move(c));
    }
    void on_witness(WitnessStep step) { steps_.push_back(std::move(step)); }

    void generate_witness(Assignment& w) const;

private:
    ConstraintSystem cs_;
    std::vector<WitnessStep> steps_;
};

}  // namespace omap::r1cs
