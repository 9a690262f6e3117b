#pragma once

#include "omap/statement.hpp"

namespace omap {

/// Spending case from the note types alone: sibling flags and debt presence
/// of inputs and outputs. Independent of note order. When a sibling is spent
/// with a debt-carrying primary into plain outputs, equal pair tags mean a
/// cancellation and different tags mean the second completion scenario.
CaseId classify_case(const Note& n_old_1, const Note& n_old_2, const Note& n_new_1,
                     const Note& n_new_2);

/// Plain-arithmetic evaluation of the common checks plus the condition set of
/// `c` with inputs and outputs taken in the roles given by `perm`.
bool case_holds(CaseId c, const PublicInput& chi, const Witness& omega, Permutation perm);

/// case_holds for some permutation of note positions.
bool case_predicate(CaseId c, const PublicInput& chi, const Witness& omega);

/// First permutation under which the case holds.
std::optional<Permutation> satisfying_permutation(CaseId c, const PublicInput& chi,
                                                  const Witness& omega);

}  // namespace omap
