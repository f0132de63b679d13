#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "rana/barstring.hpp"
#include "rana/rana.hpp"

namespace rana {

enum class Semantics : std::uint8_t { Full, Restricted };

// Memoizing satisfaction checker bound to one automaton. Not thread-safe;
// use one instance per thread.
class Evaluator {
 public:
  explicit Evaluator(const Rana& a) : a_(&a) {}

  bool sat(const BarString& w, const ConcreteFormula& f, Semantics s = Semantics::Full);
  // w satisfies the transition formula of q.
  bool sat_state(const BarString& w, const State& q, Semantics s = Semantics::Full);
  // Throws NotClosed.
  bool accepts(const BarString& w);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  using Span = std::span<const BarLetter>;

  bool eval(Span w, const ConcreteFormula& f, Semantics s);
  bool eval_state(Span w, const State& q, Semantics s);

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept;
  };

  const Rana* a_;
  std::unordered_map<std::vector<std::uint32_t>, bool, KeyHash> memo_;
};

bool sat(const Rana& a, const BarString& w, const Formula& f, const State& at);
bool sat_restricted(const Rana& a, const BarString& w, const Formula& f, const State& at);
bool accepts(const Rana& a, const BarString& w);

// Accepted canonical closed strings of length <= max_len over the pool.
std::vector<BarString> enumerate_language(const Rana& a, std::size_t max_len, std::span<const Name> pool);
std::vector<BarString> enumerate_language(const Rana& a, std::size_t max_len, std::size_t pool_size);

struct EvalNode {
  BarString word;
  ConcreteFormula formula;
  std::vector<std::size_t> successors;
};

struct EvalDag {
  std::vector<EvalNode> nodes;  // nodes[0] is the root
};

// Bar-modal nodes keep a single successor, renamed with a name fresh for the
// node and for the root word.
EvalDag evaluation_dag(const BarString& w, const ConcreteFormula& f, const Rana& a);
NameSet escape_letters(const BarString& w, const ConcreteFormula& f, const Rana& a);

}  // namespace rana
