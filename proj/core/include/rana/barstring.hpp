#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rana/nominal.hpp"

namespace rana {

struct BarLetter {
  bool bar = false;
  Name name;

  static BarLetter plain(Name n) { return {false, n}; }
  static BarLetter bound(Name n) { return {true, n}; }

  friend constexpr auto operator<=>(const BarLetter&, const BarLetter&) = default;
};

class BarString {
 public:
  BarString() = default;
  BarString(std::vector<BarLetter> letters) : letters_(std::move(letters)) {}
  BarString(std::initializer_list<BarLetter> letters) : letters_(letters) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const BarLetter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<BarLetter>& letters() const { return letters_; }

  BarString prefix(std::size_t n) const;
  BarString suffix(std::size_t from) const;
  void push_back(BarLetter l) { letters_.push_back(l); }

  // Shortlex order: shorter strings first.
  friend bool operator<(const BarString& a, const BarString& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters_ < b.letters_;
  }
  friend bool operator==(const BarString&, const BarString&) = default;

 private:
  std::vector<BarLetter> letters_;
};

using DataWord = std::vector<Name>;

NameSet support(const BarString& w);
BarString apply(const Permutation& p, const BarString& w);

NameSet free_names(const BarString& w);
bool is_closed(const BarString& w);
bool is_clean(const BarString& w);
BarString canonical(const BarString& w);
// The α-variant binding the i-th binder to name i. Throws NotClosed.
BarString clean_variant(const BarString& w);
bool alpha_eq(const BarString& v, const BarString& w);
DataWord unbar(const BarString& w);

struct Barring {
  BarString word;
  bool closed = false;
  bool clean = false;
};

// All 2^|u| bar placements over u.
std::vector<Barring> barrings(const DataWord& u);

// Canonical closed bar strings of length <= max_len whose names all lie in
// pool. Sorted shortlex, one per α-class.
std::vector<BarString> enumerate_closed(std::size_t max_len, std::span<const Name> pool);
// Convenience: pool of the first `pool_size` names.
std::vector<BarString> enumerate_closed(std::size_t max_len, std::size_t pool_size);

// Interns identifiers as names, in order of first appearance.
class NameTable {
 public:
  Name intern(std::string_view ident);
  // Falls back to "n<id>" for names never interned.
  std::string spell(Name n) const;
  bool contains(std::string_view ident) const;
  std::size_t size() const { return spelling_.size(); }

 private:
  std::unordered_map<std::string, Name> ids_;
  std::vector<std::string> spelling_;
};

bool is_identifier(std::string_view s);

// Whitespace-separated tokens: `x` plain, `|x` bar; `<eps>` for the empty word.
BarString parse_bar_string(std::string_view text, NameTable& names);
DataWord parse_data_word(std::string_view text, NameTable& names);
std::string to_string(const BarString& w, const NameTable& names);
std::string to_string(const DataWord& u, const NameTable& names);
// Spells every name as n<id>.
std::string to_string(const BarString& w);
std::string to_string(const DataWord& u);

}  // namespace rana
