#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace rana {

struct Name {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(Name, Name) = default;
};

using NameSet = std::set<Name>;

// Finite permutation; names outside the stored map are fixed.
class Permutation {
 public:
  Permutation() = default;

  static Permutation swap(Name a, Name b);
  // Throws std::invalid_argument unless `m` is a bijection on its keys.
  static Permutation from_map(const std::map<Name, Name>& m);

  Name operator()(Name n) const;
  // (*this ∘ rhs)(n) = (*this)(rhs(n))
  Permutation compose(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const { return map_.empty(); }
  const std::map<Name, Name>& mapping() const { return map_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::map<Name, Name> map_;
};

// Register assignment: a partial injective map from slots 0..arity-1 to names.
class PartialInjection {
 public:
  PartialInjection() = default;
  explicit PartialInjection(std::size_t arity);
  // Throws std::invalid_argument if two defined slots share a name.
  explicit PartialInjection(const std::vector<std::optional<Name>>& slots);

  static PartialInjection total(std::span<const Name> names);

  std::size_t arity() const { return slots_.size(); }
  bool defined(std::size_t slot) const { return slots_[slot] != kUndefined; }
  std::optional<Name> at(std::size_t slot) const;
  // Precondition: defined(slot).
  Name value(std::size_t slot) const { return Name{slots_[slot]}; }
  bool is_total() const;
  std::uint32_t domain_mask() const;
  std::size_t defined_count() const;
  bool extends(const PartialInjection& r) const;
  std::optional<std::size_t> slot_of(Name n) const;

  const std::vector<std::uint32_t>& raw() const { return slots_; }

  friend auto operator<=>(const PartialInjection&, const PartialInjection&) = default;

  static constexpr std::uint32_t kUndefined = 0xffffffffu;

 private:
  std::vector<std::uint32_t> slots_;
};

NameSet support(Name n);
NameSet support(const NameSet& s);
NameSet support(const PartialInjection& r);

Name apply(const Permutation& p, Name n);
PartialInjection apply(const Permutation& p, const PartialInjection& r);
NameSet apply(const Permutation& p, const NameSet& s);

PartialInjection restrict(const PartialInjection& r, const NameSet& keep);

// Least name not in `used`.
Name fresh_for(const NameSet& used);

template <class... Ts>
Name fresh_for_all(const Ts&... xs) {
  NameSet used;
  (used.merge(support(xs)), ...);
  return fresh_for(used);
}

// <a>x = <b>y, decided with the least name fresh for everything involved.
template <class T>
bool abstraction_eq(Name a, const T& x, Name b, const T& y) {
  Name c = fresh_for_all(a, b, x, y);
  return apply(Permutation::swap(a, c), x) == apply(Permutation::swap(b, c), y);
}

// NameSet drags namespace std into argument-dependent lookup, where
// std::apply would be a candidate; this overload keeps the call qualified.
inline bool abstraction_eq(Name a, const NameSet& x, Name b, const NameSet& y) {
  Name c = fresh_for_all(a, b, x, y);
  return rana::apply(Permutation::swap(a, c), x) == rana::apply(Permutation::swap(b, c), y);
}

}  // namespace rana

template <>
struct std::hash<rana::Name> {
  std::size_t operator()(rana::Name n) const noexcept { return n.id; }
};
