#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rana/barstring.hpp"
#include "rana/formula.hpp"
#include "rana/rana.hpp"

namespace rana {

struct AfaVar {
  std::uint32_t state = 0;
  friend auto operator<=>(const AfaVar&, const AfaVar&) = default;
};

inline std::size_t hash_value(const AfaVar& v) { return v.state * 0x9e3779b97f4a7c15ull; }

// Positive Boolean formula over AFA states; a state is a Diamond node.
using PosFormula = BasicFormula<AfaVar>;

inline PosFormula afa_var(std::uint32_t q) { return PosFormula::diamond(AfaVar{q}); }

// Minimal satisfying sets, each sorted; empty result means unsatisfiable,
// a single empty set means the formula is true.
std::vector<std::vector<std::uint32_t>> minimal_models(const PosFormula& f);

struct BarAfa {
  std::vector<std::string> states;
  std::vector<BarLetter> alphabet;
  std::vector<std::vector<PosFormula>> delta;  // delta[state][letter index]
  std::uint32_t initial = 0;
  std::vector<bool> finals;
  std::optional<Name> star;  // the extra bar name, when the automaton has one

  std::optional<std::size_t> letter_index(BarLetter l) const;
  std::size_t state_count() const { return states.size(); }
};

// Throws LetterNotInAlphabet.
bool afa_accepts(const BarAfa& a, const BarString& w);

struct AfaEmptiness {
  bool nonempty = false;
  BarString witness;
  std::size_t configurations = 0;
};

// Breadth-first backward search over sets of states that accept a common
// word, keeping only maximal sets. The witness is a shortest accepted word.
AfaEmptiness afa_nonempty(const BarAfa& a, std::size_t config_budget = 5'000'000);

// Literal-language membership via α-variants over the alphabet, counting
// both whole acceptance and accepted pre-words. Throws NotClosed and
// BudgetExceeded.
bool member_literal(const BarAfa& a, const BarString& w, std::size_t budget = 5'000'000);

struct AfaTranslation {
  BarAfa afa;
  std::vector<State> origin;  // origin[i]: the name-dropped state behind AFA state i
  std::size_t k = 0;
};

// Input must be a name-dropped automaton.
AfaTranslation rana_to_barafa_detailed(const Rana& nd);
BarAfa rana_to_barafa(const Rana& nd);

Rana barafa_to_rana(const BarAfa& a);

}  // namespace rana
