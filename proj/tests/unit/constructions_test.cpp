#include <algorithm>
#include <cmath>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"
#include "rana/text.hpp"
#include "rana/semantics.hpp"

using namespace rana;

namespace {

constexpr std::size_t kLen = 3;
constexpr std::size_t kPool = 3;

std::set<BarString> lang(const Rana& a, std::size_t len = kLen) {
  auto v = enumerate_language(a, len, kPool);
  return {v.begin(), v.end()};
}

std::set<BarString> closed(std::size_t len = kLen) {
  auto v = enumerate_closed(len, kPool);
  return {v.begin(), v.end()};
}

BarString bs(std::string_view text) {
  NameTable names;
  return parse_bar_string(text, names);
}

Rana rooted_at(const Rana& a, std::uint32_t orbit) {
  return Rana(a.orbits(), orbit, a.flavor(), a.totality());
}

bool positive_only(const Rana& a) {
  return std::none_of(a.orbits().begin(), a.orbits().end(), [](const Orbit& o) {
    return contains_kind(o.formula, NodeKind::Not) || contains_kind(o.formula, NodeKind::Box) ||
           contains_kind(o.formula, NodeKind::NegEps);
  });
}

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST_CASE("dualize doubles the orbits and keeps the degree") {
  for (auto flavor : {Flavor::Ordinary, Flavor::ExplicitDual, Flavor::Positive})
    for (const auto& a : corpus::random(flavor, 20)) {
      const Rana d = dualize(a);
      CHECK(d.orbit_count() == 2 * a.orbit_count());
      CHECK(d.degree() == a.degree());
    }
}

TEST_CASE("dual of the top automaton") {
  const Rana top = corpus::fixture("top.rana");
  const Rana d = dualize(top);
  CHECK(lang(d) == closed());
  CHECK(lang(rooted_at(d, static_cast<std::uint32_t>(top.orbit_count()))).empty());
}

TEST_CASE("dualize and its complement copy match the oracle") {
  for (auto flavor : {Flavor::Ordinary, Flavor::ExplicitDual})
    for (const auto& a : corpus::random(flavor, 50)) {
      const auto expected = oracle::ref_language(a, kLen, kPool);
      CHECK(lang(dualize(a)) == expected);
      std::set<BarString> comp;
      for (const auto& w : closed())
        if (!expected.count(w)) comp.insert(w);
      CHECK(lang(complement(a)) == comp);
    }
}

TEST_CASE("complement edge cases") {
  CHECK(lang(complement(corpus::fixture("bottom.rana"))) == closed());
  const Rana ex = corpus::fixture("two_binders.rana");
  CHECK_FALSE(accepts(complement(ex), bs("|a |b a b")));
  CHECK(accepts(complement(ex), bs("|a |b a a")));
  for (const auto& a : corpus::random(Flavor::Ordinary, 20)) CHECK(lang(complement(complement(a))) == lang(a));
}

TEST_CASE("union and intersection") {
  const Rana top = corpus::fixture("top.rana");
  const Rana bottom = corpus::fixture("bottom.rana");
  const auto autos = corpus::random(Flavor::Ordinary, 40, 500);
  for (std::size_t i = 0; i + 1 < autos.size(); i += 2) {
    const Rana& x = autos[i];
    const Rana& y = autos[i + 1];
    const auto lx = oracle::ref_language(x, kLen, kPool);
    const auto ly = oracle::ref_language(y, kLen, kPool);
    std::set<BarString> u, n;
    std::set_union(lx.begin(), lx.end(), ly.begin(), ly.end(), std::inserter(u, u.end()));
    std::set_intersection(lx.begin(), lx.end(), ly.begin(), ly.end(), std::inserter(n, n.end()));
    CHECK(lang(union_(x, y)) == u);
    CHECK(lang(intersection_(x, y)) == n);
    CHECK(lang(union_(x, bottom)) == lx);
    CHECK(lang(intersection_(x, top)) == lx);
  }
}

TEST_CASE("positivize removes dual atoms and preserves the language") {
  for (const auto& a : corpus::random(Flavor::ExplicitDual, 50)) {
    const Rana p = positivize(a);
    CHECK(positive_only(p));
    CHECK(p.degree() <= 2 * a.degree() + 1);
    // Closed inputs start with no escape letters.
    CHECK(p.orbit(p.initial_orbit()).arity == 0);
    CHECK(lang(p) == oracle::ref_language(a, kLen, kPool));
  }
}

TEST_CASE("positivize of a negated eps") {
  const Rana a = parse_rana(R"(rana explicit-dual total
orbit q0 arity 0 { <|x> q1(x) }
orbit q1 arity 1 { ~eps /\ <r0> q2 \/ eps }
orbit q2 arity 0 { eps }
init q0)");
  const Rana p = positivize(a);
  CHECK(positive_only(p));
  CHECK(accepts(p, bs("|a a")));
  CHECK(accepts(p, bs("|a")));
  CHECK_FALSE(accepts(p, bs("|a |b")));
  CHECK(lang(p) == lang(a));
}

TEST_CASE("name_drop on an arity-0 automaton changes nothing") {
  const Rana a = corpus::fixture("top.rana");
  const Rana nd = name_drop(a);
  CHECK(nd.orbit_count() == a.orbit_count());
  CHECK(nd.formula(nd.initial_orbit()) == a.formula(a.initial_orbit()));
}

TEST_CASE("name_drop preserves the language and removes the need for renaming") {
  for (const auto& a : corpus::random(Flavor::Positive, 50)) {
    const Rana nd = name_drop(a);
    CHECK(nd.orbit_count() <= a.orbit_count() * (std::size_t{1} << a.degree()));
    CHECK(nd.degree() <= a.degree());
    CHECK(lang(nd) == oracle::ref_language(a, kLen, kPool));
    for (const auto& w : enumerate_closed(4, kPool))
      CHECK(oracle::ref_accepts(nd, w) == oracle::ref_accepts(nd, w, true));
  }
}

TEST_CASE("dnf_normalize shapes") {
  const Rana a = parse_rana(R"(rana positive total
orbit q0 arity 0 { eps /\ <|x> q1(x) \/ <|x> q3(x) }
orbit q1 arity 1 { eps }
orbit q3 arity 1 { <|x> q2(r0,x) }
orbit q2 arity 2 { <r0> q1(r0) /\ <r1> q1(r1) \/ eps }
init q0)");
  const Rana d = dnf_normalize(a);
  // eps /\ <|x> ... is false; the mixed-letter conjunction of q2 is false.
  CHECK(d.formula(*d.find_orbit("q2")) == Formula::eps());
  CHECK_FALSE(contains_kind(d.formula(d.initial_orbit()), NodeKind::Eps));
  CHECK(lang(d, 4) == lang(a, 4));
}

TEST_CASE("dnf_normalize preserves the language") {
  for (const auto& a : corpus::random(Flavor::Positive, 50)) {
    const Rana nd = name_drop(a);
    const Rana d = dnf_normalize(nd);
    CHECK(lang(d) == lang(nd));
    for (const auto& o : d.orbits()) {
      const Formula& f = o.formula;
      std::vector<Formula> parts = f.is(NodeKind::Or) ? f.children() : std::vector<Formula>{f};
      for (const auto& p : parts) {
        if (p.is(NodeKind::True) || p.is(NodeKind::False) || p.is(NodeKind::Eps) || p.is(NodeKind::Diamond))
          continue;
        REQUIRE(p.is(NodeKind::And));
        for (const auto& c : p.children()) {
          CHECK(c.is(NodeKind::Diamond));
          CHECK(c.atom().letter == p.children()[0].atom().letter);
        }
      }
    }
  }
}

TEST_CASE("rest leaves a singleton alone") {
  const Rana nd = name_drop(corpus::fixture("two_binders.rana"));
  const auto q1 = *nd.find_orbit(1, 1);
  const StateSet s{State{q1, PartialInjection({Name{4}})}};
  CHECK(rest({s}, nd) == std::set<StateSet>{s});
}

TEST_CASE("rest collapses the growing powerset to two states") {
  const Rana nd = name_drop(corpus::fixture("growing_sets.rana"));
  const std::uint32_t q0 = nd.initial_orbit();
  const std::uint32_t q1_full = *nd.find_orbit(1, 1);
  const std::uint32_t q1_none = *nd.find_orbit(1, 0);
  for (std::uint32_t n = 2; n <= 5; ++n) {
    StateSet s{nd.initial()};
    for (std::uint32_t i = 0; i < n; ++i) s.insert(State{q1_full, PartialInjection({Name{i}})});
    const auto out = rest({s}, nd);
    const StateSet two{State{q0, PartialInjection(0)}, State{q1_none, PartialInjection(1)}};
    CHECK(out.count(two) == 1);
    for (const auto& t : out) CHECK(t.size() <= 2);
  }
}

TEST_CASE("rest keeps acceptance by all members") {
  std::mt19937_64 rng(53);
  const auto autos = corpus::random(Flavor::Positive, 30, 200);
  const auto words = oracle::all_strings(3, 4);
  for (std::size_t trial = 0; trial < 150; ++trial) {
    const Rana nd = name_drop(autos[trial % autos.size()]);
    StateSet s;
    const std::size_t size = 1 + rng() % 4;
    for (std::size_t j = 0; j < size; ++j) {
      const auto orbit = static_cast<std::uint32_t>(rng() % nd.orbit_count());
      const Orbit& ob = nd.orbit(orbit);
      std::vector<Name> names{Name{0}, Name{1}, Name{2}, Name{3}};
      std::shuffle(names.begin(), names.end(), rng);
      std::vector<std::optional<Name>> slots(ob.arity);
      for (std::uint32_t t = 0; t < ob.arity; ++t)
        if ((ob.domain >> t) & 1u) slots[t] = names[t];
      s.insert(State{orbit, PartialInjection(slots)});
    }
    const auto out = rest({s}, nd);
    // Every output member restricts some input member.
    for (const auto& t : out)
      for (const auto& q : t)
        CHECK(std::any_of(s.begin(), s.end(), [&](const State& p) {
          return nd.orbit(p.orbit).family == nd.orbit(q.orbit).family && p.regs.extends(q.regs);
        }));
    for (int k = 0; k < 5; ++k) {
      const BarString& w = words[rng() % words.size()];
      auto all = [&](const StateSet& x) {
        return std::all_of(x.begin(), x.end(), [&](const State& q) { return oracle::ref_sat_state(nd, w, q, false); });
      };
      CHECK(all(s) == std::any_of(out.begin(), out.end(), all));
    }
  }
}

TEST_CASE("dealternate on an automaton that is already conjunction-free") {
  const Rana a = parse_rana(R"(rana ernna total
orbit q0 arity 0 { <|x> q1(x) \/ eps }
orbit q1 arity 1 { <r0> q0 \/ <|x> q1(x) }
init q0)");
  const Rana nd = dnf_normalize(name_drop(a));
  const auto d = dealternate_detailed(nd);
  CHECK(d.max_set_size == 1);
  CHECK(lang(d.ernna) == lang(a));
}

TEST_CASE("dealternate keeps the growing powerset small") {
  const Rana nd = dnf_normalize(name_drop(corpus::fixture("growing_sets.rana")));
  const auto d = dealternate_detailed(nd);
  CHECK(d.max_set_size <= 2);
  CHECK(lang(d.ernna, 4) == lang(corpus::fixture("growing_sets.rana"), 4));
}

TEST_CASE("full pipeline into an ERNNA preserves the language") {
  std::size_t done = 0;
  for (const auto& a : corpus::random(Flavor::ExplicitDual, 50)) {
    const Rana nd = dnf_normalize(name_drop(to_positive(a)));
    DealternateResult d;
    try {
      d = dealternate_detailed(nd, 2'000'000, 2000);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++done;
    for (const auto& o : d.ernna.orbits()) CHECK_FALSE(contains_kind(o.formula, NodeKind::And));
    CHECK(d.max_set_size <= d.bound);
    const std::size_t n = nd.family_count(), k = nd.degree();
    CHECK(d.ernna.degree() <= std::max<std::size_t>(1, n * k * factorial(k)));
    CHECK(lang(d.ernna) == oracle::ref_language(a, kLen, kPool));
  }
  CHECK(done >= 45);
}
