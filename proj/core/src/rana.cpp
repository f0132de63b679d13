#include "rana/rana.hpp"

#include <bit>
#include <set>

#include "rana/error.hpp"

namespace rana {

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::Ordinary: return "ordinary";
    case Flavor::Positive: return "positive";
    case Flavor::ExplicitDual: return "explicit-dual";
    case Flavor::Ernna: return "ernna";
  }
  return "?";
}

std::string_view to_string(Totality t) { return t == Totality::Total ? "total" : "partial"; }

std::optional<Flavor> parse_flavor(std::string_view s) {
  if (s == "ordinary") return Flavor::Ordinary;
  if (s == "positive") return Flavor::Positive;
  if (s == "explicit-dual") return Flavor::ExplicitDual;
  if (s == "ernna") return Flavor::Ernna;
  return std::nullopt;
}

std::optional<Totality> parse_totality(std::string_view s) {
  if (s == "total") return Totality::Total;
  if (s == "partial") return Totality::Partial;
  return std::nullopt;
}

Rana::Rana(std::vector<Orbit> orbits, std::uint32_t initial_orbit, Flavor flavor, Totality totality)
    : orbits_(std::move(orbits)), initial_(initial_orbit), flavor_(flavor), totality_(totality) {
  top_.reserve(orbits_.size());
  for (std::uint32_t i = 0; i < orbits_.size(); ++i) {
    by_family_.emplace(std::make_pair(orbits_[i].family, orbits_[i].domain), i);
    top_.push_back(simplify(orbits_[i].formula).is(NodeKind::True));
  }
}

State Rana::initial() const { return {initial_, PartialInjection(orbits_.at(initial_).arity)}; }

std::size_t Rana::degree() const {
  std::size_t k = 0;
  for (const auto& o : orbits_) k = std::max<std::size_t>(k, std::popcount(o.domain));
  return k;
}

std::size_t Rana::family_count() const {
  std::set<std::uint32_t> fams;
  for (const auto& o : orbits_) fams.insert(o.family);
  return fams.size();
}

std::optional<std::uint32_t> Rana::find_orbit(std::uint32_t family, std::uint32_t domain) const {
  auto it = by_family_.find({family, domain});
  if (it == by_family_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Rana::find_orbit(std::string_view name) const {
  for (std::uint32_t i = 0; i < orbits_.size(); ++i)
    if (orbits_[i].name == name) return i;
  return std::nullopt;
}

ConcreteFormula instantiate(const Formula& f, const State& at, std::optional<Name> bound) {
  Name x = bound ? *bound : fresh_for(support(at));
  auto reg = [&](std::uint32_t j) {
    if (j >= at.regs.arity() || !at.regs.defined(j))
      throw UndefinedRegister("register r" + std::to_string(j) + " is undefined");
    return at.regs.value(j);
  };
  return map_modal<ConcreteAtom>(f, [&](NodeKind k, const SymAtom& a) {
    BarLetter letter = a.letter.is_bound() ? BarLetter::bound(x) : BarLetter::plain(reg(a.letter.slot));
    std::vector<std::optional<Name>> regs(a.succ.slots.size());
    for (std::size_t t = 0; t < regs.size(); ++t) {
      const SlotSource& s = a.succ.slots[t];
      if (s.kind == SlotSource::Kind::Reg)
        regs[t] = reg(s.slot);
      else if (s.kind == SlotSource::Kind::Bound)
        regs[t] = x;
    }
    return ConcreteFormula::modal(k, ConcreteAtom{letter, State{a.succ.orbit, PartialInjection(regs)}});
  });
}

ConcreteFormula transition(const Rana& a, const State& q, std::optional<Name> bound) {
  return instantiate(a.formula(q.orbit), q, bound);
}

bool fits_flavor(const Formula& f, Flavor flavor) {
  const bool has_not = contains_kind(f, NodeKind::Not);
  const bool has_duals = contains_kind(f, NodeKind::Box) || contains_kind(f, NodeKind::NegEps);
  switch (flavor) {
    case Flavor::Ordinary: return !has_duals;
    case Flavor::ExplicitDual: return !has_not;
    case Flavor::Positive: return !has_not && !has_duals;
    case Flavor::Ernna: return !has_not && !has_duals && !contains_kind(f, NodeKind::And);
  }
  return false;
}

bool uses_negation(const Rana& a) {
  for (const auto& o : a.orbits())
    if (contains_kind(o.formula, NodeKind::Not)) return true;
  return false;
}

bool uses_dual_atoms(const Rana& a) {
  for (const auto& o : a.orbits())
    if (contains_kind(o.formula, NodeKind::Box) || contains_kind(o.formula, NodeKind::NegEps)) return true;
  return false;
}

std::vector<std::string> validate(const Rana& a) {
  std::vector<std::string> diags;
  auto report = [&](const std::string& where, const std::string& what) { diags.push_back(where + ": " + what); };

  if (a.orbit_count() == 0) {
    report("automaton", "empty orbit table, no initial state");
    return diags;
  }
  if (a.initial_orbit() >= a.orbit_count()) {
    report("automaton", "initial orbit out of range");
    return diags;
  }
  if (a.orbit(a.initial_orbit()).domain != 0)
    report("automaton", "initial state '" + a.orbit(a.initial_orbit()).name + "' is not equivariant");

  std::set<std::string> names;
  std::set<std::pair<std::uint32_t, std::uint32_t>> fam_dom;
  for (std::uint32_t i = 0; i < a.orbit_count(); ++i) {
    const Orbit& o = a.orbit(i);
    const std::string where = "orbit " + o.name;
    if (!is_identifier(o.name)) report(where, "name is not an identifier");
    if (!names.insert(o.name).second) report(where, "duplicate orbit name");
    if (o.arity > 31) {
      report(where, "arity above 31 is not supported");
      continue;
    }
    if ((o.domain & ~full_mask(o.arity)) != 0) report(where, "domain exceeds arity");
    if (a.totality() == Totality::Total && o.domain != full_mask(o.arity))
      report(where, "partial domain in a total automaton");
    if (!fam_dom.insert({o.family, o.domain}).second) report(where, "two orbits share family and domain");
    if (!fits_flavor(o.formula, a.flavor()))
      report(where, "formula violates " + std::string(to_string(a.flavor())) + " flavor");

    for_each_modal(o.formula, [&](NodeKind, const SymAtom& at) {
      const bool bar = at.letter.is_bound();
      if (!bar) {
        std::uint32_t j = at.letter.slot;
        if (j >= o.arity || !((o.domain >> j) & 1u))
          report(where, "letter r" + std::to_string(j) + " is not a defined register");
      }
      if (at.succ.orbit >= a.orbit_count()) {
        report(where, "successor orbit out of range");
        return;
      }
      const Orbit& target = a.orbit(at.succ.orbit);
      if (at.succ.slots.size() != target.arity) {
        report(where, "successor " + target.name + " has wrong argument count");
        return;
      }
      std::uint32_t defined = 0;
      std::set<std::pair<int, std::uint32_t>> sources;
      for (std::size_t t = 0; t < at.succ.slots.size(); ++t) {
        const SlotSource& s = at.succ.slots[t];
        if (s.kind == SlotSource::Kind::Undefined) continue;
        defined |= 1u << t;
        if (s.kind == SlotSource::Kind::Bound && !bar)
          report(where, "bound name used outside a bar modality");
        if (s.kind == SlotSource::Kind::Reg && (s.slot >= o.arity || !((o.domain >> s.slot) & 1u)))
          report(where, "successor reads undefined register r" + std::to_string(s.slot));
        if (!sources.insert({static_cast<int>(s.kind), s.slot}).second)
          report(where, "successor " + target.name + " is not injective");
      }
      if (defined != target.domain)
        report(where, "successor " + target.name + " defines slots outside its domain");
    });
  }
  return diags;
}

void require_valid(const Rana& a) {
  auto diags = validate(a);
  if (diags.empty()) return;
  std::string msg;
  for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d;
  throw ValidationError(msg);
}

}  // namespace rana
