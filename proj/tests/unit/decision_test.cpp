#include <algorithm>

#include "corpus.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "rana/constructions.hpp"
#include "rana/decision.hpp"
#include "rana/semantics.hpp"
#include "rana/text.hpp"

using namespace rana;

namespace {

std::set<BarString> lang(const Rana& a, std::size_t len) {
  auto v = enumerate_language(a, len, 3);
  return {v.begin(), v.end()};
}

// Data words of length <= n over names 0..pool-1.
std::vector<DataWord> data_words(std::size_t n, std::uint32_t pool) {
  std::vector<DataWord> out{{}}, layer{{}};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<DataWord> next;
    for (const auto& u : layer)
      for (std::uint32_t x = 0; x < pool; ++x) {
        DataWord v = u;
        v.push_back(Name{x});
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

const char* kSingleRepeat = R"(rana positive total
orbit q0 arity 0 { <|x> q1(x) }
orbit q1 arity 1 { <r0> q2 }
orbit q2 arity 0 { eps }
init q0)";

}  // namespace

TEST_CASE("emptiness of the constant automata") {
  CHECK(is_empty(corpus::fixture("bottom.rana")).empty);
  const auto r = is_empty(corpus::fixture("top.rana"));
  CHECK_FALSE(r.empty);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->empty());
}

TEST_CASE("emptiness agrees with bounded enumeration") {
  for (auto flavor : {Flavor::Positive, Flavor::Ordinary, Flavor::ExplicitDual})
    for (const auto& a : corpus::random(flavor, 35, 40)) {
      const auto r = is_empty(a);
      CHECK(r.report.bounds_ok());
      const bool seen = !lang(a, 4).empty();
      if (seen) CHECK_FALSE(r.empty);
      if (!r.empty) {
        REQUIRE(r.witness.has_value());
        CHECK(oracle::ref_accepts(a, *r.witness));
      }
    }
}

TEST_CASE("pipeline report lists every stage") {
  const auto r = is_empty(corpus::fixture("negation.rana"));
  std::vector<std::string> stages;
  for (const auto& s : r.report.stages) stages.push_back(s.stage);
  CHECK(std::find(stages.begin(), stages.end(), "name_drop") != stages.end());
  CHECK(r.report.bounds_ok());
  CHECK_FALSE(r.report.bounds.empty());
}

TEST_CASE("inclusion basics") {
  const Rana top = corpus::fixture("top.rana");
  const Rana bottom = corpus::fixture("bottom.rana");
  const Rana ex = corpus::fixture("two_binders.rana");
  CHECK(includes(ex, ex).holds);
  CHECK(includes(bottom, ex).holds);
  const auto r = includes(top, bottom);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  CHECK(r.counterexample->empty());
  CHECK(includes(ex, top).holds);
  CHECK_FALSE(includes(top, ex).holds);
}

TEST_CASE("inclusion never misses a short counterexample") {
  const auto autos = corpus::random(Flavor::Ordinary, 60, 700);
  for (std::size_t i = 0; i + 1 < autos.size(); i += 2) {
    const Rana& x = autos[i];
    const Rana& y = autos[i + 1];
    const auto r = includes(x, y);
    const auto lx = oracle::ref_language(x, 3, 3);
    const auto ly = oracle::ref_language(y, 3, 3);
    const bool short_cex = std::any_of(lx.begin(), lx.end(), [&](const BarString& w) { return !ly.count(w); });
    if (short_cex) CHECK_FALSE(r.holds);
    if (!r.holds) {
      REQUIRE(r.counterexample.has_value());
      CHECK(accepts(x, *r.counterexample));
      CHECK_FALSE(accepts(y, *r.counterexample));
    }
    CHECK(includes(x, x).holds);
  }
}

TEST_CASE("equivalence") {
  const Rana ex = corpus::fixture("two_binders.rana");
  CHECK(equivalent(ex, union_(ex, corpus::fixture("bottom.rana"))));
  CHECK_FALSE(equivalent(ex, complement(ex)));
  for (const auto& a : corpus::random(Flavor::Ordinary, 10)) CHECK(equivalent(a, complement(complement(a))));
}

TEST_CASE("global and local freshness on the negation fixture") {
  const Rana a = corpus::fixture("negation.rana");
  const Name x{0}, y{1};
  CHECK(member_global(a, {x, y}));
  CHECK_FALSE(member_global(a, {x, x}));
  CHECK(member_local(a, {x, x}));
  CHECK(member_local(a, {x, y}));
  CHECK(member_global(a, {}) == accepts(a, {}));
  CHECK(member_local(a, {}) == accepts(a, {}));
}

TEST_CASE("global freshness is the clean image of the bar language") {
  for (const auto& a : corpus::random(Flavor::Positive, 15)) {
    for (const auto& u : data_words(4, 3)) {
      bool expected = false;
      for (const auto& b : barrings(u))
        if (b.clean && b.closed && oracle::ref_accepts(a, b.word)) expected = true;
      CHECK(member_global(a, u) == expected);
      if (member_global(a, u)) CHECK(member_local(a, u));
    }
  }
}

TEST_CASE("bounded local-freshness inclusion") {
  const Rana neg = corpus::fixture("negation.rana");
  CHECK_FALSE(includes_local_bounded(neg, neg, 3, 3).refuted);
  const auto r = includes_local_bounded(corpus::fixture("top.rana"), corpus::fixture("bottom.rana"), 2, 2);
  CHECK(r.refuted);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->empty());

  // The repeat automaton reads only "a a" locally; neg reads every pair.
  const Rana repeat = parse_rana(kSingleRepeat);
  const auto v = includes_local_bounded(neg, repeat, 3, 3);
  CHECK(v.refuted);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->size() == 2);
  CHECK(member_local(neg, *v.witness));
  CHECK_FALSE(member_local(repeat, *v.witness));
  CHECK_FALSE(includes_local_bounded(repeat, neg, 3, 3).refuted);
}
