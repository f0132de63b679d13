#include "rana/barstring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rana/error.hpp"

namespace rana {

BarString BarString::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return BarString(std::vector<BarLetter>(letters_.begin(), letters_.begin() + n));
}

BarString BarString::suffix(std::size_t from) const {
  from = std::min(from, letters_.size());
  return BarString(std::vector<BarLetter>(letters_.begin() + from, letters_.end()));
}

NameSet support(const BarString& w) {
  NameSet s;
  for (auto l : w) s.insert(l.name);
  return s;
}

BarString apply(const Permutation& p, const BarString& w) {
  std::vector<BarLetter> out;
  out.reserve(w.size());
  for (auto l : w) out.push_back({l.bar, p(l.name)});
  return BarString(std::move(out));
}

NameSet free_names(const BarString& w) {
  NameSet bound, free;
  for (auto l : w) {
    if (l.bar)
      bound.insert(l.name);
    else if (!bound.count(l.name))
      free.insert(l.name);
  }
  return free;
}

bool is_closed(const BarString& w) { return free_names(w).empty(); }

bool is_clean(const BarString& w) {
  NameSet binders;
  for (auto l : w)
    if (l.bar && !binders.insert(l.name).second) return false;
  NameSet fn = free_names(w);
  return std::none_of(binders.begin(), binders.end(), [&](Name n) { return fn.count(n) > 0; });
}

BarString canonical(const BarString& w) {
  const std::size_t n = w.size();
  // suffix_free[i] = FN(w[i..])
  std::vector<NameSet> suffix_free(n + 1);
  for (std::size_t i = n; i-- > 0;) {
    suffix_free[i] = suffix_free[i + 1];
    if (w[i].bar)
      suffix_free[i].erase(w[i].name);
    else
      suffix_free[i].insert(w[i].name);
  }
  const NameSet& whole_free = suffix_free[0];

  std::map<Name, Name> renamed;  // currently bound name -> output name
  std::vector<BarLetter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Name a = w[i].name;
    if (!w[i].bar) {
      auto it = renamed.find(a);
      out.push_back(BarLetter::plain(it == renamed.end() ? a : it->second));
      continue;
    }
    NameSet forbidden = whole_free;
    for (Name x : suffix_free[i + 1]) {
      if (x == a) continue;
      auto it = renamed.find(x);
      forbidden.insert(it == renamed.end() ? x : it->second);
    }
    Name c = fresh_for(forbidden);
    renamed[a] = c;
    out.push_back(BarLetter::bound(c));
  }
  return BarString(std::move(out));
}

bool alpha_eq(const BarString& v, const BarString& w) {
  return v.size() == w.size() && canonical(v) == canonical(w);
}

DataWord unbar(const BarString& w) {
  DataWord u;
  u.reserve(w.size());
  for (auto l : w) u.push_back(l.name);
  return u;
}

BarString clean_variant(const BarString& w) {
  std::map<Name, Name> current;
  std::uint32_t next = 0;
  std::vector<BarLetter> out;
  for (auto l : w) {
    if (l.bar) {
      const Name fresh{next++};
      current[l.name] = fresh;
      out.push_back(BarLetter::bound(fresh));
    } else {
      auto it = current.find(l.name);
      if (it == current.end()) throw NotClosed("clean_variant: input has free names");
      out.push_back(BarLetter::plain(it->second));
    }
  }
  return BarString(std::move(out));
}

std::vector<Barring> barrings(const DataWord& u) {
  if (u.size() >= 31) throw std::length_error("barrings: data word too long");
  std::vector<Barring> out;
  const std::uint32_t total = 1u << u.size();
  out.reserve(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<BarLetter> letters;
    letters.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) letters.push_back({((mask >> i) & 1u) != 0, u[i]});
    BarString w(std::move(letters));
    bool closed = is_closed(w);
    bool clean = is_clean(w);
    out.push_back({std::move(w), closed, clean});
  }
  return out;
}

namespace {

void extend_closed(std::vector<BarLetter>& cur, std::vector<int>& bind_depth, std::size_t max_len,
                   std::span<const Name> pool, const NameSet& pool_set, std::set<BarString>& found) {
  BarString w(cur);
  BarString c = canonical(w);
  NameSet used = support(c);
  if (std::includes(pool_set.begin(), pool_set.end(), used.begin(), used.end())) found.insert(std::move(c));
  if (cur.size() == max_len) return;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (bind_depth[i] > 0) {
      cur.push_back(BarLetter::plain(pool[i]));
      extend_closed(cur, bind_depth, max_len, pool, pool_set, found);
      cur.pop_back();
    }
    cur.push_back(BarLetter::bound(pool[i]));
    ++bind_depth[i];
    extend_closed(cur, bind_depth, max_len, pool, pool_set, found);
    --bind_depth[i];
    cur.pop_back();
  }
}

}  // namespace

std::vector<BarString> enumerate_closed(std::size_t max_len, std::span<const Name> pool) {
  if (pool.empty()) throw std::invalid_argument("enumerate_closed: empty pool");
  NameSet pool_set(pool.begin(), pool.end());
  std::vector<Name> names(pool_set.begin(), pool_set.end());
  std::set<BarString> found;
  std::vector<BarLetter> cur;
  std::vector<int> bind_depth(names.size(), 0);
  extend_closed(cur, bind_depth, max_len, names, pool_set, found);
  return {found.begin(), found.end()};
}

std::vector<BarString> enumerate_closed(std::size_t max_len, std::size_t pool_size) {
  std::vector<Name> pool;
  for (std::uint32_t i = 0; i < pool_size; ++i) pool.push_back(Name{i});
  return enumerate_closed(max_len, pool);
}

Name NameTable::intern(std::string_view ident) {
  auto it = ids_.find(std::string(ident));
  if (it != ids_.end()) return it->second;
  Name n{static_cast<std::uint32_t>(spelling_.size())};
  ids_.emplace(std::string(ident), n);
  spelling_.emplace_back(ident);
  return n;
}

std::string NameTable::spell(Name n) const {
  if (n.id < spelling_.size()) return spelling_[n.id];
  std::string s = "n" + std::to_string(n.id);
  while (ids_.count(s)) s += "_";
  return s;
}

bool NameTable::contains(std::string_view ident) const { return ids_.count(std::string(ident)) > 0; }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(head) && s[0] != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

namespace {

std::vector<std::string> tokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

BarString parse_bar_string(std::string_view text, NameTable& names) {
  auto toks = tokens(text);
  if (toks.size() == 1 && toks[0] == "<eps>") return {};
  std::vector<BarLetter> letters;
  for (const auto& t : toks) {
    bool bar = !t.empty() && t[0] == '|';
    std::string_view ident = std::string_view(t).substr(bar ? 1 : 0);
    if (!is_identifier(ident)) throw std::invalid_argument("bad bar-string token '" + t + "'");
    letters.push_back({bar, names.intern(ident)});
  }
  return BarString(std::move(letters));
}

DataWord parse_data_word(std::string_view text, NameTable& names) {
  auto toks = tokens(text);
  if (toks.size() == 1 && toks[0] == "<eps>") return {};
  DataWord u;
  for (const auto& t : toks) {
    if (!is_identifier(t)) throw std::invalid_argument("bad data-word token '" + t + "'");
    u.push_back(names.intern(t));
  }
  return u;
}

std::string to_string(const BarString& w, const NameTable& names) {
  if (w.empty()) return "<eps>";
  std::string s;
  for (auto l : w) {
    if (!s.empty()) s += ' ';
    if (l.bar) s += '|';
    s += names.spell(l.name);
  }
  return s;
}

std::string to_string(const DataWord& u, const NameTable& names) {
  if (u.empty()) return "<eps>";
  std::string s;
  for (Name n : u) {
    if (!s.empty()) s += ' ';
    s += names.spell(n);
  }
  return s;
}

std::string to_string(const BarString& w) { return to_string(w, NameTable{}); }

std::string to_string(const DataWord& u) { return to_string(u, NameTable{}); }

}  // namespace rana
