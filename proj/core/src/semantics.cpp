#include "rana/semantics.hpp"

#include <map>

#include "rana/error.hpp"

namespace rana {

namespace {

bool in_support(const State& q, Name n) { return q.regs.slot_of(n).has_value(); }

// The successor of bar atom <c>q' on input |b: (c b).q' when the
// abstraction allows it, otherwise nullopt.
std::optional<State> literal_bar_successor(const ConcreteAtom& atom, Name b) {
  Name c = atom.letter.name;
  if (b == c) return atom.target;
  if (in_support(atom.target, b)) return std::nullopt;
  return apply(Permutation::swap(c, b), atom.target);
}

}  // namespace

std::size_t Evaluator::KeyHash::operator()(const std::vector<std::uint32_t>& k) const noexcept {
  std::size_t h = k.size();
  for (auto v : k) h = hash_mix(h, v);
  return h;
}

bool Evaluator::sat(const BarString& w, const ConcreteFormula& f, Semantics s) {
  return eval(Span(w.letters()), f, s);
}

bool Evaluator::sat_state(const BarString& w, const State& q, Semantics s) {
  return eval_state(Span(w.letters()), q, s);
}

bool Evaluator::accepts(const BarString& w) {
  if (!is_closed(w)) throw NotClosed("input bar string has free names");
  return sat_state(w, a_->initial());
}

bool Evaluator::eval(Span w, const ConcreteFormula& f, Semantics s) {
  switch (f.kind()) {
    case NodeKind::True: return true;
    case NodeKind::False: return false;
    case NodeKind::Eps: return w.empty();
    case NodeKind::NegEps: return !w.empty();
    case NodeKind::Not: return !eval(w, f.children()[0], s);
    case NodeKind::And:
      for (const auto& c : f.children())
        if (!eval(w, c, s)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : f.children())
        if (eval(w, c, s)) return true;
      return false;
    case NodeKind::Diamond:
    case NodeKind::Box: {
      const bool box = f.kind() == NodeKind::Box;
      const ConcreteAtom& atom = f.atom();
      if (w.empty()) return box;
      const BarLetter head = w.front();
      Span rest = w.subspan(1);
      if (!atom.letter.bar) {
        if (head.bar || head.name != atom.letter.name) return box;
        return eval_state(rest, atom.target, s);
      }
      if (!head.bar) return box;
      if (auto next = literal_bar_successor(atom, head.name)) return eval_state(rest, *next, s);
      if (s == Semantics::Restricted) return false;
      // Rename the input binder b to d, fresh for everything in sight.
      Name b = head.name;
      Name c = atom.letter.name;
      NameSet used = support(atom.target);
      for (auto l : rest) used.insert(l.name);
      used.insert(b);
      used.insert(c);
      Name d = fresh_for(used);
      std::vector<BarLetter> renamed(rest.begin(), rest.end());
      for (auto& l : renamed)
        if (l.name == b) l.name = d;
      return eval_state(Span(renamed), apply(Permutation::swap(c, d), atom.target), s);
    }
  }
  return false;
}

bool Evaluator::eval_state(Span w, const State& q, Semantics s) {
  if (a_->is_top(q.orbit)) return true;
  // Key: state and word jointly renamed by first occurrence.
  std::vector<std::uint32_t> key;
  key.reserve(3 + q.regs.arity() + w.size());
  key.push_back(s == Semantics::Restricted ? 1u : 0u);
  key.push_back(q.orbit);
  std::map<std::uint32_t, std::uint32_t> ren;
  auto id = [&](std::uint32_t n) {
    auto [it, fresh] = ren.emplace(n, static_cast<std::uint32_t>(ren.size()));
    return it->second;
  };
  for (auto v : q.regs.raw()) key.push_back(v == PartialInjection::kUndefined ? v : id(v));
  key.push_back(0xfffffffeu);
  for (auto l : w) key.push_back((id(l.name.id) << 1) | (l.bar ? 1u : 0u));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = eval(w, transition(*a_, q), s);
  memo_.emplace(std::move(key), r);
  return r;
}

bool sat(const Rana& a, const BarString& w, const Formula& f, const State& at) {
  Evaluator ev(a);
  return ev.sat(w, instantiate(f, at), Semantics::Full);
}

bool sat_restricted(const Rana& a, const BarString& w, const Formula& f, const State& at) {
  Evaluator ev(a);
  return ev.sat(w, instantiate(f, at), Semantics::Restricted);
}

bool accepts(const Rana& a, const BarString& w) {
  Evaluator ev(a);
  return ev.accepts(w);
}

std::vector<BarString> enumerate_language(const Rana& a, std::size_t max_len, std::span<const Name> pool) {
  Evaluator ev(a);
  std::vector<BarString> out;
  for (auto& w : enumerate_closed(max_len, pool))
    if (ev.accepts(w)) out.push_back(std::move(w));
  return out;
}

std::vector<BarString> enumerate_language(const Rana& a, std::size_t max_len, std::size_t pool_size) {
  Evaluator ev(a);
  std::vector<BarString> out;
  for (auto& w : enumerate_closed(max_len, pool_size))
    if (ev.accepts(w)) out.push_back(std::move(w));
  return out;
}

namespace {

class DagBuilder {
 public:
  DagBuilder(const Rana& a, NameSet root_free) : a_(a), root_free_(std::move(root_free)) {}

  std::size_t node(const BarString& w, const ConcreteFormula& f) {
    auto key = std::make_pair(w, f);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    std::size_t id = dag.nodes.size();
    index_.emplace(key, id);
    dag.nodes.push_back({w, f, {}});
    std::vector<std::size_t> succ;
    switch (f.kind()) {
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Not:
        for (const auto& c : f.children()) succ.push_back(node(w, c));
        break;
      case NodeKind::Diamond:
      case NodeKind::Box: {
        const ConcreteAtom& atom = f.atom();
        if (w.empty() || w[0].bar != atom.letter.bar) break;
        BarString rest = w.suffix(1);
        if (!atom.letter.bar) {
          if (w[0].name == atom.letter.name) succ.push_back(node(rest, transition(a_, atom.target)));
          break;
        }
        NameSet used = root_free_;
        used.merge(support(rest));
        used.merge(support(atom.target));
        used.insert(atom.letter.name);
        used.insert(w[0].name);
        Name d = fresh_for(used);
        BarString v = apply(Permutation::swap(w[0].name, d), rest);
        State q = apply(Permutation::swap(atom.letter.name, d), atom.target);
        succ.push_back(node(v, transition(a_, q)));
        break;
      }
      default: break;
    }
    dag.nodes[id].successors = std::move(succ);
    return id;
  }

  EvalDag dag;

 private:
  const Rana& a_;
  NameSet root_free_;
  std::map<std::pair<BarString, ConcreteFormula>, std::size_t> index_;
};

}  // namespace

EvalDag evaluation_dag(const BarString& w, const ConcreteFormula& f, const Rana& a) {
  DagBuilder b(a, free_names(w));
  b.node(w, f);
  return std::move(b.dag);
}

NameSet escape_letters(const BarString& w, const ConcreteFormula& f, const Rana& a) {
  NameSet fn = free_names(w);
  NameSet out;
  EvalDag dag = evaluation_dag(w, f, a);
  for (const auto& n : dag.nodes) {
    if (n.word.empty() || n.word[0].bar || !fn.count(n.word[0].name)) continue;
    const auto& g = n.formula;
    if (g.is(NodeKind::NegEps)) out.insert(n.word[0].name);
    if (g.is(NodeKind::Box) && n.successors.empty()) out.insert(n.word[0].name);
  }
  return out;
}

}  // namespace rana
