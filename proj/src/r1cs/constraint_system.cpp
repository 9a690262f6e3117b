#include "omap/r1cs/constraint_system.hpp"

#include <algorithm>
#include <limits>

namespace omap::r1cs {

LinearCombination LinearCombination::constant(const Fe& c) {
    LinearCombination lc;
    if (!c.is_zero()) lc.terms_.push_back({kOne.index, c});
    return lc;
}

LinearCombination& LinearCombination::add_term(Variable v, const Fe& coeff) {
    for (auto& t : terms_) {
        if (t.index == v.index) {
            t.coeff += coeff;
            return *this;
        }
    }
    terms_.push_back({v.index, coeff});
    return *this;
}

LinearCombination& LinearCombination::operator+=(const LinearCombination& o) {
    for (const auto& t : o.terms_) add_term(Variable{t.index}, t.coeff);
    return *this;
}

LinearCombination& LinearCombination::operator-=(const LinearCombination& o) {
    for (const auto& t : o.terms_) add_term(Variable{t.index}, -t.coeff);
    return *this;
}

LinearCombination& LinearCombination::operator*=(const Fe& k) {
    for (auto& t : terms_) t.coeff *= k;
    return *this;
}

Fe LinearCombination::evaluate(std::span<const Fe> w) const {
    static const Fe kUnit = Fe::one();
    Fe acc;
    for (const auto& t : terms_) {
        if (t.index == kOne.index) {
            acc += t.coeff;  // w[0] = 1
        } else if (t.coeff == kUnit) {
            acc += w[t.index];
        } else {
            acc += t.coeff * w[t.index];
        }
    }
    return acc;
}

LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
LinearCombination operator*(LinearCombination a, const Fe& k) { return a *= k; }
LinearCombination operator*(const Fe& k, LinearCombination a) { return a *= k; }

bool Constraint::is_satisfied(std::span<const Fe> w) const {
    return a.evaluate(w) * b.evaluate(w) == c.evaluate(w);
}

Variable ConstraintSystem::allocate_public() {
    if (num_aux_ != 0) throw std::logic_error("public inputs must precede auxiliary variables");
    return Variable{static_cast<std::uint32_t>(1 + num_public_++)};
}

Variable ConstraintSystem::allocate_aux() {
    return Variable{static_cast<std::uint32_t>(1 + num_public_ + num_aux_++)};
}

void ConstraintSystem::add(LinearCombination a, LinearCombination b, LinearCombination c) {
    constraints_.push_back(Constraint{std::move(a), std::move(b), std::move(c)});
}

Assignment ConstraintSystem::make_assignment() const {
    Assignment w(num_variables());
    w[0] = Fe::one();
    return w;
}

bool ConstraintSystem::is_satisfied(std::span<const Fe> w) const {
    return !first_unsatisfied_parallel(*this, w).has_value();
}

std::optional<std::size_t> first_unsatisfied_serial(const ConstraintSystem& cs,
                                                    std::span<const Fe> w) {
    if (w.size() != cs.num_variables() || w[0] != Fe::one()) return 0;
    const auto& cons = cs.constraints();
    for (std::size_t i = 0; i < cons.size(); ++i) {
        if (!cons[i].is_satisfied(w)) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> first_unsatisfied_parallel(const ConstraintSystem& cs,
                                                      std::span<const Fe> w) {
    if (w.size() != cs.num_variables() || w[0] != Fe::one()) return 0;
    const auto& cons = cs.constraints();
    const auto n = static_cast<std::ptrdiff_t>(cons.size());
    std::size_t first = std::numeric_limits<std::size_t>::max();

#pragma omp parallel for schedule(static) reduction(min : first)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (idx < first && !cons[idx].is_satisfied(w)) first = idx;
    }

    if (first == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return first;
}

void Protoboard::generate_witness(Assignment& w) const {
    for (const auto& step : steps_) step(w);
}

}  // namespace omap::r1cs
