#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "detail.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"

namespace rana {

namespace {

// A name held by the source state: a register, or the binder of the
// enclosing bar modality.
using Ref = SlotSource;

struct Positivizer {
  const Rana& a;
  std::uint32_t k;  // source degree
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::uint32_t top = 0;

  std::uint32_t orbit_of(std::uint32_t src, std::uint32_t mask, std::uint32_t extras) const {
    return index.at({src, mask, extras});
  }

  SymAtom to_top(LetterRef letter) const { return SymAtom{letter, Successor{top, {}}}; }

  // Target (q', S) where S is given by references into the source state.
  Successor target(const Successor& succ, const std::vector<Ref>& escape) const {
    std::uint32_t mask = 0;
    std::vector<Ref> extras;
    for (const Ref& s : escape) {
      bool held = false;
      for (std::size_t t = 0; t < succ.slots.size(); ++t)
        if (succ.slots[t] == s) {
          mask |= 1u << t;
          held = true;
        }
      if (!held) extras.push_back(s);
    }
    Successor out{orbit_of(succ.orbit, mask, static_cast<std::uint32_t>(extras.size())), succ.slots};
    out.slots.insert(out.slots.end(), extras.begin(), extras.end());
    return out;
  }

  // All subsets of S u {binder} with at most k+1 names.
  std::vector<std::vector<Ref>> bar_escapes(const std::vector<Ref>& escape) const {
    std::vector<Ref> pool = escape;
    pool.push_back(Ref::bound());
    std::vector<std::vector<Ref>> out;
    for (std::uint32_t m = 0; m < (1u << pool.size()); ++m) {
      if (static_cast<std::uint32_t>(std::popcount(m)) > k + 1) continue;
      std::vector<Ref> pick;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((m >> i) & 1u) pick.push_back(pool[i]);
      out.push_back(std::move(pick));
    }
    return out;
  }

  Formula translate(const Formula& f, const std::vector<Ref>& escape) const {
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Eps: return f;
      case NodeKind::NegEps: {
        std::vector<Formula> ds;
        for (const Ref& s : escape) ds.push_back(Formula::diamond(to_top(LetterRef::reg(s.slot))));
        ds.push_back(Formula::diamond(to_top(LetterRef::bound())));
        return Formula::disj(std::move(ds));
      }
      case NodeKind::Not: throw FlavorError("positivize: negation must be dualized first");
      case NodeKind::And:
      case NodeKind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(translate(c, escape));
        return f.is(NodeKind::And) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
      case NodeKind::Diamond:
      case NodeKind::Box: break;
    }
    const SymAtom& at = f.atom();
    const bool box = f.is(NodeKind::Box);
    std::vector<Formula> ds;
    if (box) ds.push_back(Formula::eps());
    if (!at.letter.is_bound()) {
      ds.push_back(Formula::diamond(SymAtom{at.letter, target(at.succ, escape)}));
      if (box) {
        for (const Ref& s : escape)
          if (s.slot != at.letter.slot) ds.push_back(Formula::diamond(to_top(LetterRef::reg(s.slot))));
        ds.push_back(Formula::diamond(to_top(LetterRef::bound())));
      }
    } else {
      for (const auto& s2 : bar_escapes(escape))
        ds.push_back(Formula::diamond(SymAtom{at.letter, target(at.succ, s2)}));
      if (box)
        for (const Ref& s : escape) ds.push_back(Formula::diamond(to_top(LetterRef::reg(s.slot))));
    }
    return Formula::disj(std::move(ds));
  }
};

}  // namespace

Rana positivize(const Rana& a) {
  if (uses_negation(a)) throw FlavorError("positivize: input must be explicit-dual");
  Positivizer p{a, static_cast<std::uint32_t>(a.degree()), {}, 0};

  struct Key {
    std::uint32_t src, mask, extras;
  };
  std::vector<Key> keys;
  for (std::uint32_t i = 0; i < a.orbit_count(); ++i) {
    const std::uint32_t dom = a.orbit(i).domain;
    // Enumerate submasks of dom in increasing order.
    std::vector<std::uint32_t> subs;
    for (std::uint32_t s = dom;; s = (s - 1) & dom) {
      subs.push_back(s);
      if (s == 0) break;
    }
    std::reverse(subs.begin(), subs.end());
    for (std::uint32_t mask : subs)
      for (std::uint32_t e = 0; std::popcount(mask) + e <= p.k + 1; ++e) {
        p.index[{i, mask, e}] = static_cast<std::uint32_t>(keys.size());
        keys.push_back({i, mask, e});
      }
  }
  p.top = static_cast<std::uint32_t>(keys.size());

  detail::NamePool names;
  std::vector<Orbit> out;
  out.reserve(keys.size() + 1);
  for (std::uint32_t id = 0; id < keys.size(); ++id) {
    const auto [src, mask, e] = keys[id];
    const Orbit& o = a.orbit(src);
    std::vector<Ref> escape;
    for (std::uint32_t j = 0; j < o.arity; ++j)
      if ((mask >> j) & 1u) escape.push_back(Ref::reg(j));
    for (std::uint32_t j = 0; j < e; ++j) escape.push_back(Ref::reg(o.arity + j));
    std::string base = mask == 0 && e == 0 ? o.name : o.name + "_s" + std::to_string(mask) + "_e" + std::to_string(e);
    Orbit q;
    q.name = names.take(base);
    q.arity = o.arity + e;
    q.domain = o.domain | (full_mask(e) << o.arity);
    q.family = id;
    q.formula = simplify(p.translate(o.formula, escape));
    q.note = "escape set of " + std::to_string(escape.size()) + " from " + o.name;
    out.push_back(std::move(q));
  }
  Orbit top;
  top.name = names.take("top");
  top.family = p.top;
  top.formula = Formula::top();
  out.push_back(std::move(top));

  return Rana(std::move(out), p.orbit_of(a.initial_orbit(), 0, 0), Flavor::Positive, a.totality());
}

Rana to_positive(const Rana& a) {
  Rana b = uses_negation(a) ? dualize(a) : a;
  if (uses_dual_atoms(b)) return positivize(b);
  if (b.flavor() == Flavor::Ordinary || b.flavor() == Flavor::ExplicitDual)
    return Rana(b.orbits(), b.initial_orbit(), Flavor::Positive, b.totality());
  return b;
}

}  // namespace rana
