#include <algorithm>

#include "detail.hpp"
#include "rana/constructions.hpp"
#include "rana/error.hpp"

namespace rana {

namespace {

Formula retarget(NodeKind k, const SymAtom& a, std::uint32_t offset) {
  SymAtom b = a;
  b.succ.orbit += offset;
  return Formula::modal(k, std::move(b));
}

Formula dual_neg(const Formula& f, std::uint32_t n);

// Negation normal form of f over the q-copies.
Formula dual_pos(const Formula& f, std::uint32_t n) {
  switch (f.kind()) {
    case NodeKind::Not: return dual_neg(f.children()[0], n);
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(dual_pos(c, n));
      return f.is(NodeKind::And) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    default: return f;
  }
}

// Negation normal form of ~f; modal atoms move to the complement copies.
Formula dual_neg(const Formula& f, std::uint32_t n) {
  switch (f.kind()) {
    case NodeKind::True: return Formula::bottom();
    case NodeKind::False: return Formula::top();
    case NodeKind::Eps: return Formula::neg_eps();
    case NodeKind::NegEps: return Formula::eps();
    case NodeKind::Not: return dual_pos(f.children()[0], n);
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(dual_neg(c, n));
      return f.is(NodeKind::And) ? Formula::disj(std::move(kids)) : Formula::conj(std::move(kids));
    }
    case NodeKind::Diamond: return retarget(NodeKind::Box, f.atom(), n);
    case NodeKind::Box: return retarget(NodeKind::Diamond, f.atom(), n);
  }
  return f;
}

std::uint32_t family_span(const Rana& a) {
  std::uint32_t m = 0;
  for (const auto& o : a.orbits()) m = std::max(m, o.family + 1);
  return m;
}

Rana dual_table(const Rana& a, bool start_in_complement) {
  const auto n = static_cast<std::uint32_t>(a.orbit_count());
  const std::uint32_t fams = family_span(a);
  detail::NamePool names;
  std::vector<Orbit> out(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Orbit& o = a.orbit(i);
    out[i] = {names.take(o.name), o.arity, o.domain, o.family, simplify(dual_pos(o.formula, n)), o.note};
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const Orbit& o = a.orbit(i);
    out[n + i] = {names.take(o.name + "_n"), o.arity, o.domain, o.family + fams,
                  simplify(dual_neg(o.formula, n)), "complement of " + o.name};
  }
  std::uint32_t init = a.initial_orbit() + (start_in_complement ? n : 0);
  return Rana(std::move(out), init, Flavor::ExplicitDual, a.totality());
}

enum class Junction { Union, Intersection };

Rana combine(const Rana& x, const Rana& y, Junction j) {
  const bool mixed = (uses_negation(x) || uses_negation(y)) && (uses_dual_atoms(x) || uses_dual_atoms(y));
  const Rana a1 = mixed && uses_negation(x) ? dualize(x) : x;
  const Rana a2 = mixed && uses_negation(y) ? dualize(y) : y;

  const auto n1 = static_cast<std::uint32_t>(a1.orbit_count());
  const std::uint32_t fam_shift = family_span(a1);
  detail::NamePool names;
  std::vector<Orbit> out;
  out.reserve(a1.orbit_count() + a2.orbit_count() + 1);
  for (const auto& o : a1.orbits()) {
    Orbit c = o;
    c.name = names.take(o.name);
    out.push_back(std::move(c));
  }
  for (const auto& o : a2.orbits()) {
    Orbit c = o;
    c.name = names.take(o.name);
    c.family += fam_shift;
    c.formula = map_modal<SymAtom>(o.formula, [&](NodeKind k, const SymAtom& at) { return retarget(k, at, n1); });
    out.push_back(std::move(c));
  }
  const Formula f1 = a1.formula(a1.initial_orbit());
  const Formula f2 = out[n1 + a2.initial_orbit()].formula;
  Orbit init;
  init.name = names.take(j == Junction::Union ? "union" : "meet");
  init.family = fam_shift + family_span(a2);
  init.formula = j == Junction::Union ? Formula::disj(f1, f2) : Formula::conj(f1, f2);
  out.push_back(std::move(init));

  Flavor flavor = Flavor::Positive;
  if (uses_negation(a1) || uses_negation(a2))
    flavor = Flavor::Ordinary;
  else if (uses_dual_atoms(a1) || uses_dual_atoms(a2))
    flavor = Flavor::ExplicitDual;
  else if (j == Junction::Union && a1.flavor() == Flavor::Ernna && a2.flavor() == Flavor::Ernna)
    flavor = Flavor::Ernna;
  Totality tot = a1.totality() == Totality::Total && a2.totality() == Totality::Total ? Totality::Total
                                                                                    : Totality::Partial;
  const auto init_index = static_cast<std::uint32_t>(out.size() - 1);
  return Rana(std::move(out), init_index, flavor, tot);
}

}  // namespace

Rana dualize(const Rana& a) { return dual_table(a, false); }

Rana complement(const Rana& a) { return dual_table(a, true); }

Rana union_(const Rana& a1, const Rana& a2) { return combine(a1, a2, Junction::Union); }

Rana intersection_(const Rana& a1, const Rana& a2) { return combine(a1, a2, Junction::Intersection); }

}  // namespace rana
