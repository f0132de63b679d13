#include "rana/barafa.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iterator>
#include <map>
#include <set>

#include "detail.hpp"
#include "rana/error.hpp"
#include "rana/semantics.hpp"

namespace rana {

namespace {

using Config = std::vector<std::uint32_t>;
using Models = std::vector<Config>;

void minimize(Models& ms) {
  std::sort(ms.begin(), ms.end(), [](const Config& x, const Config& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  Models out;
  for (auto& m : ms) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](const Config& o) {
      return std::includes(m.begin(), m.end(), o.begin(), o.end());
    });
    if (!dominated) out.push_back(std::move(m));
  }
  ms = std::move(out);
}

Config join(const Config& x, const Config& y) {
  Config z;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
  return z;
}

Models product(const Models& xs, const Models& ys, std::size_t& budget) {
  Models out;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      if (budget == 0) throw BudgetExceeded("configuration product too large");
      --budget;
      out.push_back(join(x, y));
    }
  minimize(out);
  return out;
}

// Lazily computed minimal models of each transition formula.
class ModelTable {
 public:
  explicit ModelTable(const BarAfa& a) : a_(a), cache_(a.states.size() * a.alphabet.size()) {}

  const Models& at(std::uint32_t q, std::size_t letter) {
    auto& slot = cache_[q * a_.alphabet.size() + letter];
    if (!slot) slot = minimal_models(a_.delta[q][letter]);
    return *slot;
  }

  // All successor configurations of c under one letter, minimized.
  Models step(const Config& c, std::size_t letter, std::size_t& budget) {
    Models acc{Config{}};
    for (std::uint32_t q : c) {
      const Models& ms = at(q, letter);
      if (ms.empty()) return {};
      acc = product(acc, ms, budget);
    }
    return acc;
  }

  bool all_top(const Config& c, std::size_t letter) {
    return std::all_of(c.begin(), c.end(), [&](std::uint32_t q) {
      const Models& ms = at(q, letter);
      return ms.size() == 1 && ms[0].empty();
    });
  }

 private:
  const BarAfa& a_;
  std::vector<std::optional<Models>> cache_;
};

// After a letter is read, eps atoms no longer hold.
PosFormula drop_eps(const PosFormula& f) {
  switch (f.kind()) {
    case NodeKind::Eps: return PosFormula::bottom();
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<PosFormula> kids;
      for (const auto& c : f.children()) kids.push_back(drop_eps(c));
      return f.is(NodeKind::And) ? PosFormula::conj(std::move(kids)) : PosFormula::disj(std::move(kids));
    }
    default: return f;
  }
}

}  // namespace

std::vector<std::vector<std::uint32_t>> minimal_models(const PosFormula& f) {
  switch (f.kind()) {
    case NodeKind::True: return {Config{}};
    case NodeKind::False: return {};
    case NodeKind::Diamond: return {Config{f.atom().state}};
    case NodeKind::Or: {
      Models out;
      for (const auto& c : f.children()) {
        auto m = minimal_models(c);
        out.insert(out.end(), m.begin(), m.end());
      }
      minimize(out);
      return out;
    }
    case NodeKind::And: {
      Models acc{Config{}};
      std::size_t budget = 50'000'000;
      for (const auto& c : f.children()) {
        acc = product(acc, minimal_models(c), budget);
        if (acc.empty()) break;
      }
      return acc;
    }
    default: throw Error("minimal_models: formula is not positive");
  }
}

std::optional<std::size_t> BarAfa::letter_index(BarLetter l) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == l) return i;
  return std::nullopt;
}

bool afa_accepts(const BarAfa& a, const BarString& w) {
  std::vector<std::size_t> letters;
  for (auto l : w) {
    auto i = a.letter_index(l);
    if (!i) throw LetterNotInAlphabet("letter outside the automaton alphabet");
    letters.push_back(*i);
  }
  // good[pos][q]: q accepts the suffix from pos.
  std::vector<std::vector<bool>> good(w.size() + 1, std::vector<bool>(a.state_count()));
  for (std::uint32_t q = 0; q < a.state_count(); ++q) good[w.size()][q] = a.finals[q];
  std::function<bool(const PosFormula&, const std::vector<bool>&)> eval = [&](const PosFormula& f,
                                                                              const std::vector<bool>& next) {
    switch (f.kind()) {
      case NodeKind::True: return true;
      case NodeKind::False: return false;
      case NodeKind::Diamond: return static_cast<bool>(next[f.atom().state]);
      case NodeKind::And:
        return std::all_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval(c, next); });
      case NodeKind::Or:
        return std::any_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval(c, next); });
      default: throw Error("afa_accepts: formula is not positive");
    }
  };
  for (std::size_t pos = w.size(); pos-- > 0;)
    for (std::uint32_t q = 0; q < a.state_count(); ++q) good[pos][q] = eval(a.delta[q][letters[pos]], good[pos + 1]);
  return good[0][a.initial];
}

AfaEmptiness afa_nonempty(const BarAfa& a, std::size_t config_budget) {
  // Backward subset search: each node is the set of states accepting some
  // word w, starting from the finals for w = eps. Larger sets subsume
  // smaller ones because stepping back one letter is monotone.
  using Bits = std::vector<std::uint64_t>;
  const std::size_t n = a.state_count();
  const std::size_t words = (n + 63) / 64;
  auto has = [](const Bits& b, std::uint32_t q) { return (b[q / 64] >> (q % 64)) & 1u; };
  auto subset = [](const Bits& x, const Bits& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] & ~y[i]) return false;
    return true;
  };
  std::function<bool(const PosFormula&, const Bits&)> eval = [&](const PosFormula& f, const Bits& acc) -> bool {
    switch (f.kind()) {
      case NodeKind::True: return true;
      case NodeKind::False: return false;
      case NodeKind::Diamond: return has(acc, f.atom().state);
      case NodeKind::And:
        return std::all_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval(c, acc); });
      case NodeKind::Or:
        return std::any_of(f.children().begin(), f.children().end(), [&](const auto& c) { return eval(c, acc); });
      default: throw Error("afa_nonempty: formula is not positive");
    }
  };

  struct Node {
    Bits set;
    std::int64_t parent;  // the node for the rest of the word
    std::size_t letter;
  };
  Bits finals(words, 0);
  for (std::uint32_t q = 0; q < n; ++q)
    if (a.finals[q]) finals[q / 64] |= std::uint64_t{1} << (q % 64);
  std::vector<Node> nodes{{finals, -1, 0}};
  std::vector<Bits> seen{finals};
  std::deque<std::size_t> queue{0};
  std::size_t budget = config_budget;
  AfaEmptiness res;
  auto finish = [&](std::int64_t id) {
    std::vector<BarLetter> word;
    for (; nodes[id].parent >= 0; id = nodes[id].parent) word.push_back(a.alphabet[nodes[id].letter]);
    res.nonempty = true;
    res.witness = BarString(std::move(word));
    res.configurations = nodes.size();
    return res;
  };
  if (has(finals, a.initial)) return finish(0);
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
      if (budget == 0) throw BudgetExceeded("afa_nonempty: search budget exhausted");
      --budget;
      Bits next(words, 0);
      for (std::uint32_t q = 0; q < n; ++q)
        if (eval(a.delta[q][l], nodes[id].set)) next[q / 64] |= std::uint64_t{1} << (q % 64);
      if (std::any_of(seen.begin(), seen.end(), [&](const Bits& s) { return subset(next, s); })) continue;
      seen.erase(std::remove_if(seen.begin(), seen.end(), [&](const Bits& s) { return subset(s, next); }),
                 seen.end());
      seen.push_back(next);
      const bool hit = has(next, a.initial);
      nodes.push_back({std::move(next), static_cast<std::int64_t>(id), l});
      if (hit) return finish(static_cast<std::int64_t>(nodes.size() - 1));
      queue.push_back(nodes.size() - 1);
    }
  }
  res.configurations = nodes.size();
  return res;
}

bool member_literal(const BarAfa& a, const BarString& w, std::size_t budget) {
  if (!is_closed(w)) throw NotClosed("member_literal: input has free names");
  const std::size_t n = w.size();
  // binder[i]: position of the bar letter that binds plain letter i.
  std::vector<std::size_t> binder(n, 0);
  {
    std::map<Name, std::size_t> last;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i].bar)
        last[w[i].name] = i;
      else
        binder[i] = last.at(w[i].name);
    }
  }
  std::vector<Name> bar_names;
  for (auto l : a.alphabet)
    if (l.bar) bar_names.push_back(l.name);

  ModelTable models(a);
  std::vector<Name> chosen(n);
  std::map<Name, std::size_t> latest;  // name -> latest binder position in the variant

  std::function<bool(std::size_t, const Models&)> dfs = [&](std::size_t pos, const Models& configs) -> bool {
    if (pos == n)
      return std::any_of(configs.begin(), configs.end(), [&](const Config& c) {
        return !c.empty() && std::all_of(c.begin(), c.end(), [&](std::uint32_t q) { return a.finals[q]; });
      });
    std::vector<BarLetter> candidates;
    if (w[pos].bar) {
      for (Name b : bar_names) candidates.push_back(BarLetter::bound(b));
    } else {
      Name b = chosen[binder[pos]];
      auto it = latest.find(b);
      if (it != latest.end() && it->second == binder[pos]) candidates.push_back(BarLetter::plain(b));
    }
    for (BarLetter l : candidates) {
      auto li = a.letter_index(l);
      if (!li) continue;
      Models next;
      for (const auto& c : configs) {
        if (models.all_top(c, *li)) return true;  // accepted pre-word ends here
        auto step = models.step(c, *li, budget);
        next.insert(next.end(), step.begin(), step.end());
      }
      if (next.empty()) continue;
      minimize(next);
      std::optional<std::size_t> saved;
      if (l.bar) {
        chosen[pos] = l.name;
        if (auto it = latest.find(l.name); it != latest.end()) saved = it->second;
        latest[l.name] = pos;
      }
      bool ok = dfs(pos + 1, next);
      if (l.bar) {
        if (saved)
          latest[l.name] = *saved;
        else
          latest.erase(l.name);
      }
      if (ok) return true;
    }
    return false;
  };
  return dfs(0, Models{Config{a.initial}});
}

AfaTranslation rana_to_barafa_detailed(const Rana& nd) {
  if (uses_negation(nd) || uses_dual_atoms(nd)) throw FlavorError("rana_to_barafa: input must be positive");
  AfaTranslation out;
  const auto k = static_cast<std::uint32_t>(nd.degree());
  out.k = k;
  BarAfa& afa = out.afa;
  const Name star{k};
  afa.star = star;

  if (nd.is_top(nd.initial_orbit())) {
    afa.states = {nd.orbit(nd.initial_orbit()).name};
    afa.alphabet = {BarLetter::bound(star)};
    afa.delta = {{PosFormula::top()}};
    afa.initial = 0;
    afa.finals = {true};
    out.origin = {nd.initial()};
    return out;
  }

  for (std::uint32_t i = 0; i < k; ++i) afa.alphabet.push_back(BarLetter::plain(Name{i}));
  for (std::uint32_t i = 0; i < k; ++i) afa.alphabet.push_back(BarLetter::bound(Name{i}));
  afa.alphabet.push_back(BarLetter::bound(star));

  std::map<State, std::uint32_t> index;
  std::deque<std::uint32_t> work;
  auto intern = [&](const State& q) {
    auto [it, fresh] = index.emplace(q, static_cast<std::uint32_t>(out.origin.size()));
    if (fresh) {
      out.origin.push_back(q);
      work.push_back(it->second);
    }
    return it->second;
  };
  intern(nd.initial());

  const Name binder{k + 1};  // outside the alphabet names
  std::vector<std::vector<PosFormula>> delta;
  while (!work.empty()) {
    const std::uint32_t id = work.front();
    work.pop_front();
    const State q = out.origin[id];
    const ConcreteFormula f = transition(nd, q, binder);
    std::vector<PosFormula> row;
    for (const BarLetter alpha : afa.alphabet) {
      auto g = map_modal<AfaVar>(f, [&](NodeKind, const ConcreteAtom& at) -> PosFormula {
        std::optional<State> next;
        if (!at.letter.bar) {
          if (!alpha.bar && alpha.name == at.letter.name) next = at.target;
        } else if (alpha.bar) {
          Name c = at.letter.name;
          if (alpha.name == c || !at.target.regs.slot_of(alpha.name))
            next = apply(Permutation::swap(c, alpha.name), at.target);
          if (next && alpha.name == star && next->regs.slot_of(star)) next.reset();
        }
        if (!next) return PosFormula::bottom();
        if (nd.is_top(next->orbit)) return PosFormula::top();
        return afa_var(intern(*next));
      });
      row.push_back(simplify(drop_eps(g)));
    }
    if (delta.size() <= id) delta.resize(id + 1);
    delta[id] = std::move(row);
  }

  Evaluator ev(nd);
  afa.delta = std::move(delta);
  afa.initial = 0;
  detail::NamePool labels;
  for (std::uint32_t id = 0; id < out.origin.size(); ++id) {
    const State& q = out.origin[id];
    // Orbit name, then one component per slot: the name id, or x if undefined.
    std::string label = nd.orbit(q.orbit).name;
    for (std::size_t t = 0; t < q.regs.arity(); ++t)
      label += q.regs.defined(t) ? "_" + std::to_string(q.regs.value(t).id) : "_x";
    afa.states.push_back(labels.take(label));
    afa.finals.push_back(ev.sat_state(BarString{}, q, Semantics::Restricted));
  }
  return out;
}

BarAfa rana_to_barafa(const Rana& nd) { return rana_to_barafa_detailed(nd).afa; }

Rana barafa_to_rana(const BarAfa& a) {
  // Register names: plain letters that also occur barred.
  std::vector<Name> regs;
  for (auto l : a.alphabet)
    if (!l.bar && a.letter_index(BarLetter::bound(l.name))) regs.push_back(l.name);
  std::sort(regs.begin(), regs.end());
  regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
  const auto n = static_cast<std::uint32_t>(regs.size());
  if (n > 20) throw Error("barafa_to_rana: too many register names");
  auto reg_of = [&](Name x) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(regs.begin(), regs.end(), x);
    if (it == regs.end() || *it != x) return std::nullopt;
    return static_cast<std::uint32_t>(it - regs.begin());
  };

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> keys;
  std::deque<std::uint32_t> work;
  const auto top = static_cast<std::uint32_t>(0);
  keys.push_back({0, 0});  // placeholder for the top orbit
  std::function<std::uint32_t(std::uint32_t, std::uint32_t)> orbit_of = [&](std::uint32_t q, std::uint32_t dom) {
    auto [it, fresh] = index.emplace(std::make_pair(q, dom), static_cast<std::uint32_t>(keys.size()));
    if (fresh) {
      keys.push_back({q, dom});
      work.push_back(it->second);
      for (std::uint32_t s = (dom - 1) & dom; s != dom; s = (s - 1) & dom) {
        orbit_of(q, s);
        if (s == 0) break;
      }
    }
    return it->second;
  };
  auto sub_successors = [&](std::uint32_t q, std::uint32_t eligible, const std::vector<SlotSource>& full,
                            LetterRef letter) {
    std::vector<Formula> ds;
    for (std::uint32_t keep = eligible;; keep = (keep - 1) & eligible) {
      Successor succ{orbit_of(q, keep), std::vector<SlotSource>(n, SlotSource::undefined())};
      for (std::uint32_t t = 0; t < n; ++t)
        if ((keep >> t) & 1u) succ.slots[t] = full[t];
      ds.push_back(Formula::diamond(SymAtom{letter, std::move(succ)}));
      if (keep == 0) break;
    }
    return Formula::disj(std::move(ds));
  };
  const std::uint32_t init = orbit_of(a.initial, 0);

  std::map<std::uint32_t, Formula> formulas;
  while (!work.empty()) {
    const std::uint32_t id = work.front();
    work.pop_front();
    auto [q, dom] = keys[id];
    std::vector<Formula> ds;
    if (a.finals[q]) ds.push_back(Formula::eps());
    for (std::size_t li = 0; li < a.alphabet.size(); ++li) {
      const BarLetter alpha = a.alphabet[li];
      const PosFormula& f = a.delta[q][li];
      auto r = reg_of(alpha.name);
      LetterRef letter;
      std::vector<SlotSource> full(n, SlotSource::undefined());
      std::uint32_t eligible = 0;
      if (!alpha.bar) {
        if (!r || !((dom >> *r) & 1u)) continue;
        letter = LetterRef::reg(*r);
        for (std::uint32_t t = 0; t < n; ++t)
          if ((dom >> t) & 1u) full[t] = SlotSource::reg(t);
        eligible = dom;
      } else {
        letter = LetterRef::bound();
        for (std::uint32_t t = 0; t < n; ++t)
          if ((dom >> t) & 1u) full[t] = SlotSource::reg(t);
        eligible = dom;
        if (r) {
          full[*r] = SlotSource::bound();
          eligible |= 1u << *r;
        }
      }
      if (simplify(f).is(NodeKind::True)) {
        ds.push_back(Formula::diamond(SymAtom{letter, Successor{top, {}}}));
        continue;
      }
      ds.push_back(map_modal<SymAtom>(f, [&](NodeKind, const AfaVar& v) {
        return sub_successors(v.state, eligible, full, letter);
      }));
    }
    formulas[id] = simplify(Formula::disj(std::move(ds)));
  }

  detail::NamePool names;
  std::vector<Orbit> orbits(keys.size());
  orbits[top].name = names.take("top");
  orbits[top].family = static_cast<std::uint32_t>(a.state_count());
  orbits[top].formula = Formula::top();
  for (std::uint32_t id = 1; id < keys.size(); ++id) {
    auto [q, dom] = keys[id];
    Orbit& o = orbits[id];
    o.name = names.take("s" + std::to_string(q) + (dom ? "_d" + std::to_string(dom) : ""));
    o.arity = n;
    o.domain = dom;
    o.family = q;
    o.formula = formulas.at(id);
    o.note = a.states[q];
  }
  return Rana(std::move(orbits), init, Flavor::Positive, Totality::Partial);
}

}  // namespace rana
