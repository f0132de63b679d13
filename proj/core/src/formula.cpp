#include "rana/formula.hpp"

namespace rana {

std::size_t hash_value(const SymAtom& a) {
  std::size_t h = hash_mix(static_cast<std::size_t>(a.letter.kind), a.letter.slot);
  h = hash_mix(h, a.succ.orbit);
  for (auto s : a.succ.slots) h = hash_mix(h, static_cast<std::size_t>(s.kind) * 131 + s.slot);
  return h;
}

std::size_t hash_value(const ConcreteAtom& a) {
  std::size_t h = hash_mix(a.letter.bar ? 1 : 2, a.letter.name.id);
  h = hash_mix(h, a.target.orbit);
  for (auto v : a.target.regs.raw()) h = hash_mix(h, v);
  return h;
}

NameSet support(const State& q) { return support(q.regs); }

State apply(const Permutation& p, const State& q) { return {q.orbit, apply(p, q.regs)}; }

NameSet support(const ConcreteFormula& f) {
  NameSet s;
  for_each_modal(f, [&](NodeKind, const ConcreteAtom& a) {
    NameSet t = support(a.target);
    if (a.letter.bar)
      t.erase(a.letter.name);
    else
      t.insert(a.letter.name);
    s.merge(t);
  });
  return s;
}

ConcreteFormula apply(const Permutation& p, const ConcreteFormula& f) {
  if (p.is_identity()) return f;
  return map_modal<ConcreteAtom>(f, [&](NodeKind k, const ConcreteAtom& a) {
    return ConcreteFormula::modal(k, ConcreteAtom{{a.letter.bar, p(a.letter.name)}, apply(p, a.target)});
  });
}

}  // namespace rana
