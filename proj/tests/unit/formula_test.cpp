#include "corpus.hpp"
#include "doctest.h"
#include "rana/error.hpp"
#include "rana/rana.hpp"

using namespace rana;

namespace {

Formula dia(std::uint32_t orbit, std::vector<SlotSource> slots, LetterRef l = LetterRef::bound()) {
  return Formula::diamond(SymAtom{l, Successor{orbit, std::move(slots)}});
}

Orbit orbit(std::string name, std::uint32_t arity, Formula f, std::uint32_t family) {
  return Orbit{std::move(name), arity, full_mask(arity), family, std::move(f), {}};
}

}  // namespace

TEST_CASE("simplify propagates constants and flattens") {
  const Formula e = Formula::eps();
  const Formula d = dia(0, {});
  CHECK(simplify(Formula::conj(e, Formula::top())) == e);
  CHECK(simplify(Formula::conj(e, Formula::bottom())).is(NodeKind::False));
  CHECK(simplify(Formula::disj(e, Formula::top())).is(NodeKind::True));
  CHECK(simplify(Formula::negate(Formula::negate(d))) == d);
  CHECK(simplify(Formula::disj(Formula::disj(d, e), d)) == simplify(Formula::disj(e, d)));
  CHECK(simplify(Formula::disj(Formula::disj(d, e), d)).children().size() == 2);
}

TEST_CASE("structural equality and hashing") {
  const Formula x = Formula::conj(Formula::eps(), dia(1, {SlotSource::bound()}));
  const Formula y = Formula::conj(Formula::eps(), dia(1, {SlotSource::bound()}));
  CHECK(x == y);
  CHECK(x.hash() == y.hash());
  CHECK(x != Formula::conj(Formula::eps(), dia(1, {SlotSource::undefined()})));
  CHECK(x.size() == 3);
}

TEST_CASE("instantiate resolves registers and the binder") {
  const Rana a = corpus::fixture("two_binders.rana");
  const auto q1 = *a.find_orbit("q1");
  const auto q2 = *a.find_orbit("q2");
  const auto q3 = *a.find_orbit("q3");
  const Name na{0}, nb{1};
  const State at{q1, PartialInjection({na})};
  const ConcreteFormula f = transition(a, at, nb);
  const ConcreteFormula expected = ConcreteFormula::conj(
      ConcreteFormula::diamond({BarLetter::bound(nb), State{q2, PartialInjection({na, nb})}}),
      ConcreteFormula::diamond({BarLetter::bound(nb), State{q3, PartialInjection({na, nb})}}));
  CHECK(simplify(f) == simplify(expected));
  CHECK(instantiate(Formula::eps(), at).is(NodeKind::Eps));
}

TEST_CASE("instantiation is equivariant") {
  const Rana a = corpus::fixture("two_binders.rana");
  const auto p = Permutation::swap(Name{0}, Name{5});
  for (std::uint32_t i = 0; i < a.orbit_count(); ++i) {
    std::vector<Name> regs;
    for (std::uint32_t j = 0; j < a.orbit(i).arity; ++j) regs.push_back(Name{j});
    const State q{i, PartialInjection::total(regs)};
    const Name bound{7};
    CHECK(apply(p, transition(a, q, bound)) == transition(a, apply(p, q), p(bound)));
  }
}

TEST_CASE("validation accepts the example fixture") {
  CHECK(validate(corpus::fixture("two_binders.rana")).empty());
}

TEST_CASE("validation reports a negation in a positive automaton") {
  std::vector<Orbit> orbits{orbit("q", 0, Formula::negate(Formula::eps()), 0)};
  const Rana a(orbits, 0, Flavor::Positive, Totality::Total);
  const auto diags = validate(a);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("flavor") != std::string::npos);
  CHECK_THROWS_AS(require_valid(a), ValidationError);
}

TEST_CASE("validation reports a non-injective successor") {
  std::vector<Orbit> orbits{orbit("i", 0, dia(1, {SlotSource::bound()}), 0),
                            orbit("q", 1, dia(2, {SlotSource::reg(0), SlotSource::reg(0)}, LetterRef::reg(0)), 1),
                            orbit("p", 2, Formula::eps(), 2)};
  const auto diags = validate(Rana(orbits, 0, Flavor::Positive, Totality::Total));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("injective") != std::string::npos);
}

TEST_CASE("validation rejects an empty orbit table") {
  CHECK_FALSE(validate(Rana({}, 0, Flavor::Positive, Totality::Total)).empty());
}

TEST_CASE("flavor predicates") {
  const Formula box = Formula::box(SymAtom{LetterRef::bound(), Successor{0, {}}});
  CHECK(fits_flavor(box, Flavor::ExplicitDual));
  CHECK_FALSE(fits_flavor(box, Flavor::Positive));
  CHECK_FALSE(fits_flavor(box, Flavor::Ordinary));
  CHECK(fits_flavor(Formula::negate(dia(0, {})), Flavor::Ordinary));
  CHECK_FALSE(fits_flavor(Formula::conj(Formula::eps(), Formula::eps()), Flavor::Ernna));
  CHECK(uses_dual_atoms(corpus::fixture("boxes.rana")));
  CHECK(uses_negation(corpus::fixture("negation.rana")));
}

TEST_CASE("degree and families") {
  const Rana a = corpus::fixture("two_binders.rana");
  CHECK(a.degree() == 2);
  CHECK(a.family_count() == a.orbit_count());
  CHECK(a.is_top(*a.find_orbit("qT")));
  CHECK_FALSE(a.is_top(*a.find_orbit("q0")));
}
