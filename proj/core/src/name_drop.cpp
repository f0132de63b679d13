#include <algorithm>
#include <bit>
#include <deque>
#include <map>

#include "detail.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"

namespace rana {

namespace {

std::vector<std::uint32_t> submasks(std::uint32_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = m;; s = (s - 1) & m) {
    out.push_back(s);
    if (s == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

struct Dropper {
  const Rana& a;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
  std::deque<std::uint32_t> work;

  std::uint32_t orbit_of(std::uint32_t src, std::uint32_t dom) {
    auto [it, fresh] = index.emplace(std::make_pair(src, dom), static_cast<std::uint32_t>(keys.size()));
    if (fresh) {
      keys.push_back({src, dom});
      work.push_back(it->second);
      for (std::uint32_t sub : submasks(dom))
        if (sub != dom) orbit_of(src, sub);
    }
    return it->second;
  }

  Formula drop(const Formula& f, std::uint32_t dom) {
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Eps: return f;
      case NodeKind::And:
      case NodeKind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children()) kids.push_back(drop(c, dom));
        return f.is(NodeKind::And) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
      }
      case NodeKind::Diamond: break;
      default: throw FlavorError("name_drop: input must be positive");
    }
    const SymAtom& at = f.atom();
    const bool bar = at.letter.is_bound();
    if (!bar && !((dom >> at.letter.slot) & 1u)) return Formula::bottom();
    // Target slots whose value the restricted state may keep.
    std::uint32_t eligible = 0;
    for (std::size_t t = 0; t < at.succ.slots.size(); ++t) {
      const SlotSource& s = at.succ.slots[t];
      if ((s.kind == SlotSource::Kind::Reg && ((dom >> s.slot) & 1u)) || (bar && s.kind == SlotSource::Kind::Bound))
        eligible |= 1u << t;
    }
    std::vector<Formula> ds;
    for (std::uint32_t keep : submasks(eligible)) {
      Successor succ{orbit_of(at.succ.orbit, keep), at.succ.slots};
      for (std::size_t t = 0; t < succ.slots.size(); ++t)
        if (!((keep >> t) & 1u)) succ.slots[t] = SlotSource::undefined();
      ds.push_back(Formula::diamond(SymAtom{at.letter, std::move(succ)}));
    }
    return Formula::disj(std::move(ds));
  }
};

struct Conjunct {
  bool eps = false;
  bool has_letter = false;
  LetterRef letter;
  std::vector<SymAtom> atoms;  // sorted, unique

  bool is_top() const { return !eps && atoms.empty(); }
  friend auto operator<=>(const Conjunct&, const Conjunct&) = default;
};

std::optional<Conjunct> merge(const Conjunct& x, const Conjunct& y) {
  Conjunct z;
  z.eps = x.eps || y.eps;
  if (x.has_letter && y.has_letter && x.letter != y.letter) return std::nullopt;
  z.has_letter = x.has_letter || y.has_letter;
  z.letter = x.has_letter ? x.letter : y.letter;
  std::set_union(x.atoms.begin(), x.atoms.end(), y.atoms.begin(), y.atoms.end(), std::back_inserter(z.atoms));
  if (z.eps && !z.atoms.empty()) return std::nullopt;
  return z;
}

bool subsumes(const Conjunct& weaker, const Conjunct& stronger) {
  return weaker.eps == stronger.eps &&
         std::includes(stronger.atoms.begin(), stronger.atoms.end(), weaker.atoms.begin(), weaker.atoms.end());
}

std::vector<Conjunct> dnf(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::True: return {Conjunct{}};
    case NodeKind::False: return {};
    case NodeKind::Eps: return {Conjunct{true, false, {}, {}}};
    case NodeKind::Diamond: return {Conjunct{false, true, f.atom().letter, {f.atom()}}};
    case NodeKind::Or: {
      std::vector<Conjunct> out;
      for (const auto& c : f.children()) {
        auto d = dnf(c);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case NodeKind::And: {
      std::vector<Conjunct> acc{Conjunct{}};
      for (const auto& c : f.children()) {
        auto d = dnf(c);
        std::vector<Conjunct> next;
        for (const auto& x : acc)
          for (const auto& y : d)
            if (auto z = merge(x, y)) next.push_back(std::move(*z));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        acc = std::move(next);
        if (acc.empty()) break;
      }
      return acc;
    }
    default: throw FlavorError("dnf_normalize: input must be positive");
  }
}

Formula to_formula(std::vector<Conjunct> cs) {
  for (const auto& c : cs)
    if (c.is_top()) return Formula::top();
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  std::vector<Formula> ds;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < cs.size() && !absorbed; ++j)
      absorbed = j != i && subsumes(cs[j], cs[i]);
    if (absorbed) continue;
    if (cs[i].eps) {
      ds.push_back(Formula::eps());
      continue;
    }
    std::vector<Formula> conj;
    for (const auto& at : cs[i].atoms) conj.push_back(Formula::diamond(at));
    ds.push_back(Formula::conj(std::move(conj)));
  }
  if (ds.empty()) return Formula::bottom();
  return Formula::disj(std::move(ds));
}

}  // namespace

Rana name_drop(const Rana& a) {
  if (uses_negation(a) || uses_dual_atoms(a)) throw FlavorError("name_drop: input must be positive");
  Dropper d{a, {}, {}, {}};
  const std::uint32_t init = d.orbit_of(a.initial_orbit(), a.orbit(a.initial_orbit()).domain);
  std::map<std::uint32_t, Formula> formulas;
  while (!d.work.empty()) {
    std::uint32_t id = d.work.front();
    d.work.pop_front();
    auto [src, dom] = d.keys[id];
    formulas[id] = simplify(d.drop(a.formula(src), dom));
  }
  detail::NamePool names;
  std::vector<Orbit> out;
  out.reserve(d.keys.size());
  for (std::uint32_t id = 0; id < d.keys.size(); ++id) {
    auto [src, dom] = d.keys[id];
    const Orbit& o = a.orbit(src);
    Orbit q;
    q.name = names.take(dom == o.domain ? o.name : o.name + "_d" + std::to_string(dom));
    q.arity = o.arity;
    q.domain = dom;
    q.family = src;
    q.formula = formulas.at(id);
    q.note = o.name;
    out.push_back(std::move(q));
  }
  return Rana(std::move(out), init, Flavor::Positive, Totality::Partial);
}

Rana dnf_normalize(const Rana& a) {
  if (uses_negation(a) || uses_dual_atoms(a)) throw FlavorError("dnf_normalize: input must be positive");
  std::vector<Orbit> out = a.orbits();
  for (auto& o : out) o.formula = to_formula(dnf(simplify(o.formula)));
  Flavor flavor = a.flavor() == Flavor::Ernna ? Flavor::Ernna : Flavor::Positive;
  return Rana(std::move(out), a.initial_orbit(), flavor, a.totality());
}

}  // namespace rana
