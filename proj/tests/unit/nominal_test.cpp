#include <random>
#include <stdexcept>

#include "doctest.h"
#include "rana/barstring.hpp"
#include "rana/nominal.hpp"

using namespace rana;

namespace {

constexpr Name a{0}, b{1}, c{2};

BarString bs(std::string_view text) {
  NameTable names;
  return parse_bar_string(text, names);
}

}  // namespace

TEST_CASE("transposition swaps its two names and fixes the rest") {
  const auto p = Permutation::swap(a, b);
  CHECK(p(a) == b);
  CHECK(p(b) == a);
  CHECK(p(c) == c);
  CHECK(Permutation::swap(a, a).is_identity());
}

TEST_CASE("identity permutation leaves an assignment alone") {
  const PartialInjection r({a, std::nullopt, c});
  CHECK(apply(Permutation{}, r) == r);
}

TEST_CASE("permutation acts letter-wise on bar strings") {
  NameTable names;
  const BarString w = parse_bar_string("b a |b a b", names);
  const BarString expected = parse_bar_string("a b |a b a", names);
  const auto p = Permutation::swap(names.intern("a"), names.intern("b"));
  CHECK(apply(p, w) == expected);

  BarString by_hand;
  for (const auto& l : w) by_hand.push_back({l.bar, p(l.name)});
  CHECK(apply(p, w) == by_hand);
}

TEST_CASE("composition and inverse") {
  const auto p = Permutation::swap(a, b);
  const auto q = Permutation::swap(b, c);
  const auto pq = p.compose(q);
  for (Name n : {a, b, c, Name{7}}) {
    CHECK(pq(n) == p(q(n)));
    CHECK(pq.inverse()(pq(n)) == n);
  }
  CHECK(p.compose(p).is_identity());
  CHECK_THROWS_AS(Permutation::from_map({{a, b}, {b, b}}), std::invalid_argument);
}

TEST_CASE("support of assignments and bar strings") {
  CHECK(support(PartialInjection({a, std::nullopt, c})) == NameSet{a, c});
  CHECK(support(bs("b a |b a b")) == NameSet{Name{0}, Name{1}});
  CHECK(support(BarString{}).empty());
}

TEST_CASE("fresh_for picks the least unused name") {
  CHECK(fresh_for({}) == Name{0});
  CHECK(fresh_for({a, b, c}) == Name{3});
  CHECK(fresh_for({a, c}) == Name{1});
}

TEST_CASE("abstraction equality") {
  const auto pair = [](Name x, Name y) { return BarString{BarLetter::plain(x), BarLetter::plain(y)}; };
  CHECK(abstraction_eq(a, NameSet{a}, b, NameSet{b}));
  CHECK(abstraction_eq(a, pair(a, b), c, pair(c, b)));
  CHECK_FALSE(abstraction_eq(a, pair(a, b), b, pair(b, b)));
  const PartialInjection x({c, a});
  CHECK(abstraction_eq(a, x, a, x));
}

TEST_CASE("restriction keeps exactly the slots mapped into the kept set") {
  const PartialInjection r({a, b});
  CHECK(restrict(r, {a}) == PartialInjection({a, std::nullopt}));
  CHECK(restrict(r, {a, b, c}) == r);
  const auto none = restrict(r, {});
  CHECK(none.arity() == 2);
  CHECK(none.defined_count() == 0);
}

TEST_CASE("partial injections reject repeated names") {
  CHECK_THROWS_AS(PartialInjection({a, a}), std::invalid_argument);
  const PartialInjection r({a, std::nullopt, c});
  CHECK(r.domain_mask() == 0b101u);
  CHECK(r.extends(PartialInjection({a, std::nullopt, std::nullopt})));
  CHECK_FALSE(r.extends(PartialInjection({b, std::nullopt, std::nullopt})));
  CHECK(r.slot_of(c) == 2u);
  CHECK_FALSE(r.slot_of(b).has_value());
}

TEST_CASE("support is equivariant") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::optional<Name>> slots;
    std::vector<std::uint32_t> pool{0, 1, 2, 3, 4};
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int i = 0; i < 3; ++i)
      slots.push_back(rng() % 3 == 0 ? std::nullopt : std::optional<Name>(Name{pool[i]}));
    const PartialInjection r(slots);
    const auto p = Permutation::swap(Name{static_cast<std::uint32_t>(rng() % 5)}, Name{static_cast<std::uint32_t>(rng() % 5)});
    CHECK(support(apply(p, r)) == rana::apply(p, support(r)));
  }
}
