#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"
#include "rana/semantics.hpp"

using namespace rana;

namespace {

BarString bs(std::string_view text) {
  NameTable names;
  return parse_bar_string(text, names);
}

bool at_init(const Rana& a, std::string_view w, Semantics s) {
  Evaluator ev(a);
  return ev.sat(bs(w), transition(a, a.initial()), s);
}

}  // namespace

TEST_CASE("example automaton membership") {
  const Rana a = corpus::fixture("two_binders.rana");
  CHECK(accepts(a, bs("|a |b a b")));
  CHECK_FALSE(accepts(a, bs("|a |b a a")));
  CHECK_FALSE(accepts(a, bs("|a |b b")));
  CHECK_FALSE(accepts(a, BarString{}));
  CHECK_THROWS_AS(accepts(a, bs("a")), NotClosed);
}

TEST_CASE("base cases on the empty word") {
  const Rana a = corpus::fixture("top.rana");
  const State q = a.initial();
  const BarString e;
  const ConcreteAtom atom{BarLetter::bound(Name{0}), q};
  Evaluator ev(a);
  CHECK(ev.sat(e, ConcreteFormula::eps()));
  CHECK_FALSE(ev.sat(e, ConcreteFormula::diamond(atom)));
  CHECK(ev.sat(e, ConcreteFormula::box(atom)));
  CHECK_FALSE(ev.sat(e, ConcreteFormula::neg_eps()));
  CHECK(ev.sat(bs("|a"), ConcreteFormula::neg_eps()));
}

TEST_CASE("bar modalities rename under the full semantics only") {
  const Rana a = corpus::fixture("negation.rana");
  CHECK(at_init(a, "|a |a", Semantics::Full));
  CHECK_FALSE(at_init(a, "|a |a", Semantics::Restricted));
  CHECK(at_init(a, "|a |b", Semantics::Full));
  CHECK(at_init(a, "|a |b", Semantics::Restricted));
  CHECK(at_init(a, "", Semantics::Full) == at_init(a, "", Semantics::Restricted));
}

TEST_CASE("top and bottom automata") {
  const Rana top = corpus::fixture("top.rana");
  const Rana bottom = corpus::fixture("bottom.rana");
  for (const auto& w : enumerate_closed(3, 3)) {
    CHECK(accepts(top, w));
    CHECK_FALSE(accepts(bottom, w));
  }
  CHECK(enumerate_language(bottom, 3, 3).empty());
  CHECK(enumerate_language(top, 2, 2) == enumerate_closed(2, 2));
}

TEST_CASE("example language up to length four") {
  const auto lang = enumerate_language(corpus::fixture("two_binders.rana"), 4, 3);
  REQUIRE(lang.size() == 1);
  CHECK(lang[0] == canonical(bs("|a |b a b")));
}

TEST_CASE("evaluator agrees with the reference semantics") {
  for (auto flavor : {Flavor::Positive, Flavor::ExplicitDual, Flavor::Ordinary})
    for (const auto& a : corpus::random(flavor, 20)) {
      Evaluator ev(a);
      for (const auto& w : enumerate_closed(3, 3)) {
        CHECK(ev.accepts(w) == oracle::ref_accepts(a, w));
        CHECK(ev.sat_state(w, a.initial(), Semantics::Restricted) == oracle::ref_accepts(a, w, true));
      }
    }
}

TEST_CASE("name-dropped automata need no renaming") {
  for (const auto& a : corpus::random(Flavor::Positive, 30)) {
    const Rana nd = name_drop(a);
    const Formula& f = nd.formula(nd.initial_orbit());
    for (const auto& w : enumerate_closed(4, 3))
      CHECK(sat(nd, w, f, nd.initial()) == sat_restricted(nd, w, f, nd.initial()));
  }
}

TEST_CASE("evaluation dag shapes") {
  const Rana a = corpus::fixture("two_binders.rana");
  CHECK(evaluation_dag({}, ConcreteFormula::eps(), a).nodes.size() == 1);

  const Name na{0}, nb{1};
  const auto q2 = *a.find_orbit("q2");
  const BarString ab{BarLetter::plain(na), BarLetter::plain(nb)};
  const auto mismatch = ConcreteFormula::diamond({BarLetter::plain(nb), State{q2, PartialInjection({na, nb})}});
  const auto leaf = evaluation_dag(ab, mismatch, a);
  CHECK(leaf.nodes.size() == 1);
  CHECK(leaf.nodes[0].successors.empty());

  // Or, two disjuncts; the a-step reaches q2b's Or with its two diamonds; the
  // b-diamond reaches q2's Or again on the empty word with two leaves.
  const State q{q2, PartialInjection({na, nb})};
  const auto dag = evaluation_dag(ab, transition(a, q), a);
  CHECK(dag.nodes.size() == 9);
}

TEST_CASE("escape letters") {
  const Rana a = corpus::fixture("boxes.rana");
  CHECK(escape_letters(bs("|a a"), transition(a, a.initial()), a).empty());

  NameTable names;
  const BarString w = parse_bar_string("a", names);
  const auto q1 = *a.find_orbit("q1");
  const auto box = ConcreteFormula::box({BarLetter::plain(Name{1}), State{q1, PartialInjection({Name{1}})}});
  CHECK(escape_letters(w, box, a) == NameSet{Name{0}});
}

TEST_CASE("escape letters stay within the formula support plus one name") {
  std::mt19937 rng(11);
  for (const auto& a : corpus::random(Flavor::ExplicitDual, 30)) {
    for (std::uint32_t i = 0; i < a.orbit_count(); ++i) {
      std::vector<Name> regs;
      for (std::uint32_t j = 0; j < a.orbit(i).arity; ++j) regs.push_back(Name{j});
      const auto f = transition(a, State{i, PartialInjection::total(regs)});
      const auto words = oracle::all_strings(3, 3);
      for (int t = 0; t < 10; ++t) {
        const BarString& w = words[rng() % words.size()];
        NameSet esc = escape_letters(w, f, a);
        NameSet allowed = support(f);
        std::size_t extra = 0;
        for (Name n : esc)
          if (!allowed.count(n)) ++extra;
        CHECK(extra <= 1);
      }
    }
  }
}
