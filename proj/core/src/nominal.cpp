#include "rana/nominal.hpp"

#include <algorithm>
#include <stdexcept>

namespace rana {

Permutation Permutation::swap(Name a, Name b) {
  Permutation p;
  if (a != b) {
    p.map_[a] = b;
    p.map_[b] = a;
  }
  return p;
}

Permutation Permutation::from_map(const std::map<Name, Name>& m) {
  NameSet keys, values;
  for (auto [k, v] : m) {
    keys.insert(k);
    values.insert(v);
  }
  if (keys != values) throw std::invalid_argument("permutation map is not a bijection on its domain");
  Permutation p;
  for (auto [k, v] : m)
    if (k != v) p.map_[k] = v;
  return p;
}

Name Permutation::operator()(Name n) const {
  auto it = map_.find(n);
  return it == map_.end() ? n : it->second;
}

Permutation Permutation::compose(const Permutation& rhs) const {
  std::map<Name, Name> m;
  for (auto [k, v] : rhs.map_) m[k] = (*this)(v);
  for (auto [k, v] : map_)
    if (!rhs.map_.count(k)) m[k] = v;
  Permutation p;
  for (auto [k, v] : m)
    if (k != v) p.map_[k] = v;
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  for (auto [k, v] : map_) p.map_[v] = k;
  return p;
}

PartialInjection::PartialInjection(std::size_t arity) : slots_(arity, kUndefined) {}

PartialInjection::PartialInjection(const std::vector<std::optional<Name>>& slots) {
  slots_.reserve(slots.size());
  for (const auto& s : slots) {
    if (s) {
      if (std::find(slots_.begin(), slots_.end(), s->id) != slots_.end())
        throw std::invalid_argument("register assignment is not injective");
      slots_.push_back(s->id);
    } else {
      slots_.push_back(kUndefined);
    }
  }
}

PartialInjection PartialInjection::total(std::span<const Name> names) {
  std::vector<std::optional<Name>> v(names.begin(), names.end());
  return PartialInjection(v);
}

std::optional<Name> PartialInjection::at(std::size_t slot) const {
  if (slot >= slots_.size() || slots_[slot] == kUndefined) return std::nullopt;
  return Name{slots_[slot]};
}

bool PartialInjection::is_total() const {
  return std::none_of(slots_.begin(), slots_.end(), [](auto s) { return s == kUndefined; });
}

std::uint32_t PartialInjection::domain_mask() const {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i] != kUndefined) m |= 1u << i;
  return m;
}

std::size_t PartialInjection::defined_count() const {
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](auto s) { return s != kUndefined; }));
}

bool PartialInjection::extends(const PartialInjection& r) const {
  if (r.arity() != arity()) return false;
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (r.slots_[i] != kUndefined && r.slots_[i] != slots_[i]) return false;
  return true;
}

std::optional<std::size_t> PartialInjection::slot_of(Name n) const {
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i] == n.id) return i;
  return std::nullopt;
}

NameSet support(Name n) { return {n}; }
NameSet support(const NameSet& s) { return s; }

NameSet support(const PartialInjection& r) {
  NameSet s;
  for (auto v : r.raw())
    if (v != PartialInjection::kUndefined) s.insert(Name{v});
  return s;
}

Name apply(const Permutation& p, Name n) { return p(n); }

PartialInjection apply(const Permutation& p, const PartialInjection& r) {
  if (p.is_identity()) return r;
  std::vector<std::optional<Name>> v(r.arity());
  for (std::size_t i = 0; i < r.arity(); ++i)
    if (r.defined(i)) v[i] = p(r.value(i));
  return PartialInjection(v);
}

NameSet apply(const Permutation& p, const NameSet& s) {
  NameSet out;
  for (Name n : s) out.insert(p(n));
  return out;
}

PartialInjection restrict(const PartialInjection& r, const NameSet& keep) {
  std::vector<std::optional<Name>> v(r.arity());
  for (std::size_t i = 0; i < r.arity(); ++i)
    if (r.defined(i) && keep.count(r.value(i))) v[i] = r.value(i);
  return PartialInjection(v);
}

Name fresh_for(const NameSet& used) {
  std::uint32_t id = 0;
  for (Name n : used) {
    if (n.id != id) break;
    ++id;
  }
  return Name{id};
}

}  // namespace rana
