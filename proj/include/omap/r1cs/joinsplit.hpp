#pragma once

#include <memory>
#include <optional>

#include "omap/r1cs/constraint_system.hpp"
#include "omap/statement.hpp"

namespace omap::r1cs {

/// The single combined JoinSplit circuit. One boolean selector per spending
/// case picks which condition set is enforced; the common checks always run.
///
/// Public inputs, in order: rt, nf_1, nf_2, cm_1, cm_2, pub_old (color,
/// amount), pub_new (color, amount), block_n, h_sig, h_1, h_2.
class JoinSplitCircuit {
public:
    explicit JoinSplitCircuit(std::size_t depth);
    ~JoinSplitCircuit();
    JoinSplitCircuit(JoinSplitCircuit&&) noexcept;
    JoinSplitCircuit& operator=(JoinSplitCircuit&&) noexcept;

    std::size_t depth() const;
    const ConstraintSystem& cs() const;

    /// Full assignment for (chi, omega) under the given selector and
    /// permutation. Empty when omega does not fit the circuit shape (path
    /// length differs from the depth, or a position needs more bits).
    std::optional<Assignment> synthesize(const PublicInput& chi, const Witness& omega,
                                         CaseId selected, Permutation perm) const;

    /// Index of the first violated constraint; nullopt when satisfied. A
    /// witness that does not fit the shape reports constraint 0.
    std::optional<std::size_t> first_unsatisfied(const PublicInput& chi, const Witness& omega,
                                                 CaseId selected, Permutation perm) const;

    bool is_satisfied(const PublicInput& chi, const Witness& omega, CaseId selected,
                      Permutation perm) const {
        return !first_unsatisfied(chi, omega, selected, perm).has_value();
    }

    /// Satisfiable under `selected` for at least one permutation.
    bool accepts(const PublicInput& chi, const Witness& omega, CaseId selected) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace omap::r1cs
