#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "detail.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"

namespace rana {

namespace {

State restrict_state(const Rana& nd, const State& q, const NameSet& keep) {
  PartialInjection r = restrict(q.regs, keep);
  auto orbit = nd.find_orbit(nd.orbit(q.orbit).family, r.domain_mask());
  if (!orbit) throw Error("rest: automaton lacks the restricted orbit of " + nd.orbit(q.orbit).name);
  return {*orbit, std::move(r)};
}

std::size_t factorial(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

struct CanonicalSet {
  std::vector<std::uint32_t> key;
  std::vector<Name> names;  // names[i] is renamed to i
};

// Minimum first-occurrence encoding over all member orders that keep
// members sorted by orbit.
CanonicalSet canonicalize(const StateSet& s) {
  std::vector<State> members(s.begin(), s.end());
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < members.size();) {
    std::size_t j = i;
    while (j < members.size() && members[j].orbit == members[i].orbit) ++j;
    groups.push_back({i, j});
    i = j;
  }
  std::size_t orders = 1;
  for (auto [b, e] : groups) orders *= factorial(e - b);
  if (orders > 200'000) throw BudgetExceeded("state set too symmetric to canonicalize");

  std::vector<std::size_t> order(members.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  CanonicalSet best;
  bool have = false;
  auto encode = [&]() {
    CanonicalSet c;
    c.key.push_back(static_cast<std::uint32_t>(members.size()));
    std::map<Name, std::uint32_t> ren;
    for (std::size_t i : order) {
      const State& q = members[i];
      c.key.push_back(q.orbit);
      for (auto v : q.regs.raw()) {
        if (v == PartialInjection::kUndefined) {
          c.key.push_back(v);
          continue;
        }
        auto [it, fresh] = ren.emplace(Name{v}, static_cast<std::uint32_t>(ren.size()));
        if (fresh) c.names.push_back(Name{v});
        c.key.push_back(it->second);
      }
    }
    if (!have || c.key < best.key) {
      best = std::move(c);
      have = true;
    }
  };
  std::function<void(std::size_t)> walk = [&](std::size_t g) {
    if (g == groups.size()) {
      encode();
      return;
    }
    auto [b, e] = groups[g];
    std::sort(order.begin() + b, order.begin() + e);
    do walk(g + 1);
    while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  walk(0);
  return best;
}

struct Disjunct {
  bool eps = false;
  BarLetter letter;
  std::vector<State> targets;
};

std::vector<Disjunct> disjuncts(const ConcreteFormula& f) {
  std::vector<ConcreteFormula> parts;
  if (f.is(NodeKind::Or))
    parts = f.children();
  else if (!f.is(NodeKind::False))
    parts.push_back(f);
  std::vector<Disjunct> out;
  for (const auto& p : parts) {
    Disjunct d;
    if (p.is(NodeKind::Eps)) {
      d.eps = true;
    } else {
      std::vector<ConcreteFormula> atoms;
      if (p.is(NodeKind::And))
        atoms = p.children();
      else
        atoms.push_back(p);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms[i].is(NodeKind::Diamond)) throw FlavorError("dealternate: formula not in normal form");
        if (i > 0 && atoms[i].atom().letter != d.letter)
          throw FlavorError("dealternate: conjunct mixes letters");
        d.letter = atoms[i].atom().letter;
        d.targets.push_back(atoms[i].atom().target);
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

// Drops every set that has a proper subset (or an earlier duplicate) in v.
std::vector<StateSet> minimal_sets(std::vector<StateSet> v) {
  std::sort(v.begin(), v.end(), [](const StateSet& a, const StateSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<StateSet> out;
  for (auto& s : v) {
    bool covered = std::any_of(out.begin(), out.end(), [&](const StateSet& m) {
      return std::includes(s.begin(), s.end(), m.begin(), m.end());
    });
    if (!covered) out.push_back(std::move(s));
  }
  return out;
}

std::string describe(const Rana& nd, const StateSet& s) {
  std::string out = "{";
  for (const auto& q : s) {
    if (out.size() > 1) out += ", ";
    out += nd.orbit(q.orbit).name + "(";
    for (std::size_t i = 0; i < q.regs.arity(); ++i) {
      if (i) out += ",";
      out += q.regs.defined(i) ? std::to_string(q.regs.value(i).id) : "_";
    }
    out += ")";
  }
  return out + "}";
}

}  // namespace

std::set<StateSet> rest(const std::set<StateSet>& phi, const Rana& nd, std::size_t step_budget) {
  std::set<StateSet> done;
  std::set<StateSet> seen(phi.begin(), phi.end());
  std::deque<StateSet> work(phi.begin(), phi.end());
  std::size_t steps = 0;
  while (!work.empty()) {
    StateSet s = std::move(work.front());
    work.pop_front();
    const State* p = nullptr;
    const State* q = nullptr;
    for (auto i = s.begin(); i != s.end() && !p; ++i)
      for (auto j = std::next(i); j != s.end(); ++j)
        if (nd.orbit(i->orbit).family == nd.orbit(j->orbit).family && support(*i) != support(*j)) {
          p = &*i;
          q = &*j;
          break;
        }
    if (!p) {
      done.insert(std::move(s));
      continue;
    }
    if (++steps > step_budget) throw BudgetExceeded("rest: step budget exhausted");
    NameSet common;
    NameSet sp = support(*p), sq = support(*q);
    std::set_intersection(sp.begin(), sp.end(), sq.begin(), sq.end(), std::inserter(common, common.end()));
    for (const State* victim : {p, q}) {
      StateSet t = s;
      t.erase(*victim);
      t.insert(restrict_state(nd, *victim, common));
      if (seen.insert(t).second) work.push_back(std::move(t));
    }
  }
  return done;
}

DealternateResult dealternate_detailed(const Rana& nd, std::size_t product_budget, std::size_t set_budget) {
  if (uses_negation(nd) || uses_dual_atoms(nd)) throw FlavorError("dealternate: input must be positive");
  const std::size_t n = nd.family_count();
  const std::size_t k = nd.degree();
  const std::size_t per_family = factorial(k);
  DealternateResult res;
  res.bound = n * per_family;

  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<StateSet> sets;
  std::deque<std::uint32_t> work;

  auto strip_top = [&](StateSet s) {
    for (auto it = s.begin(); it != s.end();) it = nd.is_top(it->orbit) ? s.erase(it) : std::next(it);
    return s;
  };
  auto check_bounds = [&](const StateSet& s) {
    res.max_set_size = std::max(res.max_set_size, s.size());
    if (s.size() > res.bound) throw StateSetOverflow("state set of size " + std::to_string(s.size()));
    std::map<std::uint32_t, std::size_t> per_orbit;
    for (const auto& q : s)
      if (++per_orbit[q.orbit] > per_family) throw StateSetOverflow("too many states of one orbit");
  };
  // Registers the orbit for s; returns it with the name order of its slots.
  auto intern = [&](const StateSet& s) {
    check_bounds(s);
    CanonicalSet c = canonicalize(s);
    auto [it, fresh] = index.emplace(c.key, static_cast<std::uint32_t>(sets.size()));
    if (fresh) {
      if (sets.size() >= set_budget) throw BudgetExceeded("dealternate: set budget exhausted");
      std::map<Name, Name> ren;
      for (std::uint32_t i = 0; i < c.names.size(); ++i) ren[c.names[i]] = Name{i};
      StateSet renamed;
      for (const auto& q : s) {
        std::vector<std::optional<Name>> regs(q.regs.arity());
        for (std::size_t t = 0; t < regs.size(); ++t)
          if (q.regs.defined(t)) regs[t] = ren.at(q.regs.value(t));
        renamed.insert({q.orbit, PartialInjection(regs)});
      }
      sets.push_back(std::move(renamed));
      work.push_back(it->second);
    }
    return std::make_pair(it->second, c.names);
  };

  const auto init = intern(strip_top({nd.initial()})).first;
  std::map<std::uint32_t, Formula> formulas;

  while (!work.empty()) {
    const std::uint32_t id = work.front();
    work.pop_front();
    const StateSet s = sets[id];
    if (s.empty()) {
      formulas[id] = Formula::top();
      continue;
    }
    NameSet names;
    for (const auto& q : s) names.merge(support(q));
    const Name x{static_cast<std::uint32_t>(names.size())};  // names are 0..m-1

    std::vector<std::vector<Disjunct>> member;
    bool all_eps = true;
    for (const auto& q : s) {
      member.push_back(disjuncts(transition(nd, q, x)));
      all_eps = all_eps && std::any_of(member.back().begin(), member.back().end(),
                                       [](const Disjunct& d) { return d.eps; });
    }

    std::vector<Formula> out;
    if (all_eps) out.push_back(Formula::eps());

    std::vector<BarLetter> letters;
    for (Name a : names) letters.push_back(BarLetter::plain(a));
    letters.push_back(BarLetter::bound(x));

    for (const BarLetter& alpha : letters) {
      std::vector<std::vector<const Disjunct*>> choices;
      for (const auto& ds : member) {
        std::vector<const Disjunct*> c;
        for (const auto& d : ds)
          if (!d.eps && d.letter == alpha) c.push_back(&d);
        if (c.empty()) break;
        choices.push_back(std::move(c));
      }
      if (choices.size() != member.size()) continue;

      // Unions of one disjunct per member, kept subset-minimal: a larger
      // conjunction only adds a weaker disjunct.
      std::vector<StateSet> deltas{StateSet{}};
      for (const auto& c : choices) {
        std::vector<StateSet> next;
        for (const auto& d : deltas)
          for (const Disjunct* pick : c) {
            StateSet u = d;
            u.insert(pick->targets.begin(), pick->targets.end());
            next.push_back(std::move(u));
          }
        deltas = minimal_sets(std::move(next));
        if (deltas.size() > product_budget) throw BudgetExceeded("dealternate: disjunct product too large");
      }
      std::vector<StateSet> targets;
      for (const auto& delta : deltas)
        for (const auto& restricted : rest({delta}, nd)) targets.push_back(strip_top(restricted));
      for (const auto& target : minimal_sets(std::move(targets))) {
        auto [orbit, order] = intern(target);
        Successor succ{orbit, {}};
        for (Name a : order) succ.slots.push_back(a == x ? SlotSource::bound() : SlotSource::reg(a.id));
        LetterRef letter = alpha.bar ? LetterRef::bound() : LetterRef::reg(alpha.name.id);
        out.push_back(Formula::diamond(SymAtom{letter, std::move(succ)}));
      }
    }
    formulas[id] = simplify(Formula::disj(std::move(out)));
  }

  std::vector<Orbit> orbits;
  orbits.reserve(sets.size());
  for (std::uint32_t id = 0; id < sets.size(); ++id) {
    NameSet names;
    for (const auto& q : sets[id]) names.merge(support(q));
    Orbit o;
    o.name = "S" + std::to_string(id);
    o.arity = static_cast<std::uint32_t>(names.size());
    o.domain = full_mask(o.arity);
    o.family = id;
    o.formula = formulas.at(id);
    o.note = describe(nd, sets[id]);
    orbits.push_back(std::move(o));
  }
  res.ernna = Rana(std::move(orbits), init, Flavor::Ernna, Totality::Total);
  res.sets = std::move(sets);
  return res;
}

Rana dealternate(const Rana& nd) { return dealternate_detailed(nd).ernna; }

}  // namespace rana
