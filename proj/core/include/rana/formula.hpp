#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "rana/barstring.hpp"
#include "rana/nominal.hpp"

namespace rana {

enum class NodeKind : std::uint8_t { True, False, Eps, NegEps, Not, And, Or, Diamond, Box };

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

// Immutable, structurally shared Boolean formula over modal atoms.
template <class Atom>
class BasicFormula {
 public:
  BasicFormula() : BasicFormula(leaf(NodeKind::True)) {}

  static BasicFormula top() { return leaf(NodeKind::True); }
  static BasicFormula bottom() { return leaf(NodeKind::False); }
  static BasicFormula eps() { return leaf(NodeKind::Eps); }
  static BasicFormula neg_eps() { return leaf(NodeKind::NegEps); }
  static BasicFormula negate(BasicFormula f) { return make(NodeKind::Not, Atom{}, {std::move(f)}); }
  static BasicFormula conj(std::vector<BasicFormula> kids) {
    if (kids.size() == 1) return kids.front();
    return make(NodeKind::And, Atom{}, std::move(kids));
  }
  static BasicFormula disj(std::vector<BasicFormula> kids) {
    if (kids.size() == 1) return kids.front();
    return make(NodeKind::Or, Atom{}, std::move(kids));
  }
  static BasicFormula conj(BasicFormula a, BasicFormula b) { return conj({std::move(a), std::move(b)}); }
  static BasicFormula disj(BasicFormula a, BasicFormula b) { return disj({std::move(a), std::move(b)}); }
  static BasicFormula diamond(Atom a) { return make(NodeKind::Diamond, std::move(a), {}); }
  static BasicFormula box(Atom a) { return make(NodeKind::Box, std::move(a), {}); }
  static BasicFormula modal(NodeKind k, Atom a) { return make(k, std::move(a), {}); }

  NodeKind kind() const { return node_->kind; }
  bool is(NodeKind k) const { return node_->kind == k; }
  bool is_modal() const { return kind() == NodeKind::Diamond || kind() == NodeKind::Box; }
  const Atom& atom() const { return node_->atom; }
  const std::vector<BasicFormula>& children() const { return node_->kids; }
  std::size_t hash() const { return node_->hash; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& k : children()) n += k.size();
    return n;
  }

  friend std::strong_ordering operator<=>(const BasicFormula& a, const BasicFormula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.is_modal())
      if (auto c = a.atom() <=> b.atom(); c != 0) return c;
    const auto& x = a.children();
    const auto& y = b.children();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
      if (auto c = x[i] <=> y[i]; c != 0) return c;
    return x.size() <=> y.size();
  }
  friend bool operator==(const BasicFormula& a, const BasicFormula& b) {
    if (a.node_ == b.node_) return true;
    return a.hash() == b.hash() && (a <=> b) == 0;
  }

 private:
  struct Node {
    NodeKind kind;
    Atom atom;
    std::vector<BasicFormula> kids;
    std::size_t hash;
  };

  explicit BasicFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static BasicFormula leaf(NodeKind k) {
    static const std::shared_ptr<const Node> cache[4] = {
        std::make_shared<const Node>(Node{NodeKind::True, Atom{}, {}, 1}),
        std::make_shared<const Node>(Node{NodeKind::False, Atom{}, {}, 2}),
        std::make_shared<const Node>(Node{NodeKind::Eps, Atom{}, {}, 3}),
        std::make_shared<const Node>(Node{NodeKind::NegEps, Atom{}, {}, 4}),
    };
    return BasicFormula(cache[static_cast<int>(k)]);
  }

  static BasicFormula make(NodeKind k, Atom a, std::vector<BasicFormula> kids) {
    std::size_t h = static_cast<std::size_t>(k) * 0x100000001b3ull;
    if (k == NodeKind::Diamond || k == NodeKind::Box) h = hash_mix(h, hash_value(a));
    for (const auto& c : kids) h = hash_mix(h, c.hash());
    return BasicFormula(std::make_shared<const Node>(Node{k, std::move(a), std::move(kids), h}));
  }

  std::shared_ptr<const Node> node_;
};

struct LetterRef {
  enum class Kind : std::uint8_t { Reg, Bound };
  Kind kind = Kind::Reg;
  std::uint32_t slot = 0;

  static LetterRef reg(std::uint32_t j) { return {Kind::Reg, j}; }
  static LetterRef bound() { return {Kind::Bound, 0}; }
  bool is_bound() const { return kind == Kind::Bound; }

  friend constexpr auto operator<=>(const LetterRef&, const LetterRef&) = default;
};

struct SlotSource {
  enum class Kind : std::uint8_t { Undefined, Reg, Bound };
  Kind kind = Kind::Undefined;
  std::uint32_t slot = 0;

  static SlotSource undefined() { return {Kind::Undefined, 0}; }
  static SlotSource reg(std::uint32_t j) { return {Kind::Reg, j}; }
  static SlotSource bound() { return {Kind::Bound, 0}; }

  friend constexpr auto operator<=>(const SlotSource&, const SlotSource&) = default;
};

struct Successor {
  std::uint32_t orbit = 0;
  std::vector<SlotSource> slots;

  friend auto operator<=>(const Successor&, const Successor&) = default;
};

struct SymAtom {
  LetterRef letter;
  Successor succ;

  friend auto operator<=>(const SymAtom&, const SymAtom&) = default;
};

std::size_t hash_value(const SymAtom& a);

using Formula = BasicFormula<SymAtom>;

struct State {
  std::uint32_t orbit = 0;
  PartialInjection regs;

  friend auto operator<=>(const State&, const State&) = default;
};

NameSet support(const State& q);
State apply(const Permutation& p, const State& q);

// Concrete atom: a plain letter with its successor, or a bar letter whose
// name is the binder of the successor.
struct ConcreteAtom {
  BarLetter letter;
  State target;

  friend auto operator<=>(const ConcreteAtom&, const ConcreteAtom&) = default;
};

std::size_t hash_value(const ConcreteAtom& a);

using ConcreteFormula = BasicFormula<ConcreteAtom>;

NameSet support(const ConcreteFormula& f);
ConcreteFormula apply(const Permutation& p, const ConcreteFormula& f);

// Rebuilds f bottom-up, replacing every modal node by fn(kind, atom).
template <class B, class A, class Fn>
BasicFormula<B> map_modal(const BasicFormula<A>& f, Fn&& fn) {
  switch (f.kind()) {
    case NodeKind::True: return BasicFormula<B>::top();
    case NodeKind::False: return BasicFormula<B>::bottom();
    case NodeKind::Eps: return BasicFormula<B>::eps();
    case NodeKind::NegEps: return BasicFormula<B>::neg_eps();
    case NodeKind::Not: return BasicFormula<B>::negate(map_modal<B>(f.children()[0], fn));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<BasicFormula<B>> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(map_modal<B>(c, fn));
      return f.kind() == NodeKind::And ? BasicFormula<B>::conj(std::move(kids))
                                       : BasicFormula<B>::disj(std::move(kids));
    }
    case NodeKind::Diamond:
    case NodeKind::Box: return fn(f.kind(), f.atom());
  }
  return BasicFormula<B>::bottom();
}

template <class A, class Fn>
void for_each_modal(const BasicFormula<A>& f, Fn&& fn) {
  if (f.is_modal()) {
    fn(f.kind(), f.atom());
    return;
  }
  for (const auto& c : f.children()) for_each_modal(c, fn);
}

template <class A>
bool contains_kind(const BasicFormula<A>& f, NodeKind k) {
  if (f.kind() == k) return true;
  return std::any_of(f.children().begin(), f.children().end(),
                     [k](const auto& c) { return contains_kind(c, k); });
}

// Constant propagation, flattening of nested And/Or, double negation,
// and sorting with duplicate removal of And/Or operands.
template <class A>
BasicFormula<A> simplify(const BasicFormula<A>& f) {
  using F = BasicFormula<A>;
  switch (f.kind()) {
    case NodeKind::Not: {
      F c = simplify(f.children()[0]);
      if (c.is(NodeKind::True)) return F::bottom();
      if (c.is(NodeKind::False)) return F::top();
      if (c.is(NodeKind::Not)) return c.children()[0];
      return F::negate(c);
    }
    case NodeKind::And:
    case NodeKind::Or: {
      const bool is_and = f.kind() == NodeKind::And;
      const NodeKind unit = is_and ? NodeKind::True : NodeKind::False;
      const NodeKind zero = is_and ? NodeKind::False : NodeKind::True;
      std::vector<F> kids;
      std::function<bool(const F&)> add = [&](const F& g) {
        F s = simplify(g);
        if (s.is(zero)) return false;
        if (s.is(unit)) return true;
        if (s.kind() == f.kind()) {
          for (const auto& c : s.children()) kids.push_back(c);
          return true;
        }
        kids.push_back(s);
        return true;
      };
      for (const auto& c : f.children())
        if (!add(c)) return is_and ? F::bottom() : F::top();
      std::sort(kids.begin(), kids.end());
      kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
      if (kids.empty()) return is_and ? F::top() : F::bottom();
      return is_and ? F::conj(std::move(kids)) : F::disj(std::move(kids));
    }
    default: return f;
  }
}

}  // namespace rana
