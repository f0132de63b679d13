#pragma once

#include <cstddef>
#include <limits>
#include <set>
#include <vector>

#include "rana/rana.hpp"

namespace rana {

// Doubles the orbit table: orbit i keeps its formula in negation normal
// form, orbit i + n accepts the complement of orbit i.
Rana dualize(const Rana& a);
Rana complement(const Rana& a);

Rana union_(const Rana& a1, const Rana& a2);
Rana intersection_(const Rana& a1, const Rana& a2);

// Replaces boxes and ~eps by diamonds, tracking escape letters in extra
// registers. Output has degree 2k+1 and one extra always-accepting orbit.
Rana positivize(const Rana& a);

// Orbits (i, D) for every reachable defined-slot set D of source orbit i.
Rana name_drop(const Rana& a);

// Every orbit formula becomes false, true, or a disjunction of eps and
// same-letter conjunctions of diamonds.
Rana dnf_normalize(const Rana& a);

// Runs dualize/positivize as needed to reach a positive automaton.
Rana to_positive(const Rana& a);

using StateSet = std::set<State>;

// Restricts same-family members with different supports down to their
// common support until no such pair remains.
std::set<StateSet> rest(const std::set<StateSet>& phi, const Rana& nd, std::size_t step_budget = 1'000'000);

struct DealternateResult {
  Rana ernna;
  std::vector<StateSet> sets;  // sets[i]: the canonical state set behind orbit i
  std::size_t max_set_size = 0;
  std::size_t bound = 0;  // n * k!
};

// Powerset construction over name-dropped states, kept orbit-finite by rest.
// Input must be name-dropped and in the form produced by dnf_normalize.
// The number of reachable sets can be doubly exponential in the degree;
// set_budget caps it with BudgetExceeded.
DealternateResult dealternate_detailed(const Rana& nd, std::size_t product_budget = 2'000'000,
                                       std::size_t set_budget = std::numeric_limits<std::size_t>::max());
Rana dealternate(const Rana& nd);

}  // namespace rana
