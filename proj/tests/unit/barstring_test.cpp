#include <algorithm>

#include "doctest.h"
#include "oracle.hpp"
#include "rana/barstring.hpp"
#include "rana/error.hpp"

using namespace rana;

namespace {

struct Words {
  NameTable names;
  BarString operator()(std::string_view text) { return parse_bar_string(text, names); }
  Name operator[](std::string_view ident) { return names.intern(ident); }
};

}  // namespace

TEST_CASE("free names") {
  Words w;
  CHECK(free_names(w("b a |b a b")) == NameSet{w["a"], w["b"]});
  CHECK(free_names(BarString{}).empty());
  CHECK(free_names(w("|a a b")) == NameSet{w["b"]});
  CHECK(is_closed(w("|a a |b a b")));
  CHECK_FALSE(is_closed(w("a |a")));
}

TEST_CASE("clean bar strings") {
  Words w;
  CHECK(is_clean(w("|a a |b b")));
  CHECK_FALSE(is_clean(w("|a a |a a")));
  CHECK_FALSE(is_clean(w("a |a a")));
}

TEST_CASE("alpha equivalence") {
  Words w;
  CHECK(alpha_eq(w("b a |b a b"), w("b a |c a c")));
  CHECK_FALSE(alpha_eq(w("b a |b a b"), w("b a |a a a")));
  CHECK(alpha_eq(w("|a |b a"), w("|a |c a")));
  CHECK_FALSE(alpha_eq(w("|a |b a"), w("|a |a a")));
  const auto u = w("|a a b |c");
  CHECK(alpha_eq(u, u));
}

TEST_CASE("canonical representatives") {
  Words w;
  const auto x = w("|x x |y x y");
  const auto y = w("|a a |b a b");
  CHECK(canonical(x) == canonical(y));
  CHECK(oracle::same_class(x, y));
  CHECK(canonical(canonical(x)) == canonical(x));

  // b and a stay free; the binder takes the least name outside {a, b}.
  Words fresh;
  const auto v = fresh("b a |c a c");
  const Name b = fresh["b"], a = fresh["a"];
  const Name n = fresh_for({a, b});
  const BarString expected{BarLetter::plain(b), BarLetter::plain(a), BarLetter::bound(n), BarLetter::plain(a),
                           BarLetter::plain(n)};
  CHECK(canonical(v) == expected);
}

TEST_CASE("canonical agrees with the recursive alpha-equivalence oracle") {
  const auto all = oracle::all_strings(4, 3);
  for (std::size_t i = 0; i < all.size(); i += 7)
    for (std::size_t j = i; j < all.size(); j += 11)
      CHECK_MESSAGE((canonical(all[i]) == canonical(all[j])) == oracle::same_class(all[i], all[j]),
                    to_string(all[i]) << " vs " << to_string(all[j]));
}

TEST_CASE("unbar erases bars") {
  Words w;
  CHECK(unbar(w("b a |b a b")) == DataWord{w["b"], w["a"], w["b"], w["a"], w["b"]});
  CHECK(unbar(BarString{}).empty());
  CHECK(unbar(w("|a |b")) == DataWord{w["a"], w["b"]});
}

TEST_CASE("barrings") {
  CHECK(barrings({}).size() == 1);
  const auto one = barrings({Name{0}});
  CHECK(one.size() == 2);
  const auto two = barrings({Name{0}, Name{0}});
  CHECK(two.size() == 4);
  std::vector<BarString> closed;
  for (const auto& b : two)
    if (b.closed) closed.push_back(b.word);
  std::sort(closed.begin(), closed.end());
  Words w;
  std::vector<BarString> expected{w("|a a"), w("|a |a")};
  std::sort(expected.begin(), expected.end());
  CHECK(closed == expected);
  for (const auto& b : two) CHECK(b.clean == is_clean(b.word));
}

TEST_CASE("enumerate_closed small cases") {
  CHECK(enumerate_closed(0, 3) == std::vector<BarString>{BarString{}});
  const auto one = enumerate_closed(1, 3);
  REQUIRE(one.size() == 2);
  CHECK(one[1] == BarString{BarLetter::bound(Name{0})});

  const auto two = enumerate_closed(2, 2);
  Words w;
  auto has = [&](const BarString& s) { return std::find(two.begin(), two.end(), canonical(s)) != two.end(); };
  CHECK(has(w("|a a")));
  CHECK(has(w("|a |a")));
  CHECK(has(w("|a |b")));
  CHECK_FALSE(has(w("a b")));
}

TEST_CASE("enumerate_closed yields one canonical string per class") {
  for (std::size_t len = 0; len <= 4; ++len)
    for (std::uint32_t pool = 1; pool <= 3; ++pool) {
      const auto v = enumerate_closed(len, pool);
      CHECK_MESSAGE(v.size() == oracle::closed_class_count(len, pool), "len " << len << " pool " << pool);
      CHECK(std::is_sorted(v.begin(), v.end()));
      for (const auto& s : v) {
        CHECK(is_closed(s));
        CHECK(canonical(s) == s);
      }
    }
}

TEST_CASE("class counts frozen from the oracle") {
  CHECK(enumerate_closed(4, 3).size() == 24);
  CHECK(enumerate_closed(3, 2).size() == 9);
}

TEST_CASE("clean variants") {
  Words w;
  const auto v = clean_variant(w("|a a |a a"));
  CHECK(is_clean(v));
  CHECK(alpha_eq(v, w("|a a |b b")));
  CHECK_THROWS_AS(clean_variant(w("a")), NotClosed);
}

TEST_CASE("parsing and printing") {
  Words w;
  const auto s = w("|a a b");
  CHECK(to_string(s, w.names) == "|a a b");
  CHECK(to_string(BarString{}, w.names) == "<eps>");
  CHECK(w("<eps>").empty());
  CHECK(to_string(s) == "|n0 n0 n1");
  CHECK(w.names.size() == 2);
  CHECK(is_identifier("b1"));
  CHECK_FALSE(is_identifier("|a"));
}
