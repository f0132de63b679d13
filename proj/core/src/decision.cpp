#include "rana/decision.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <functional>

#include "rana/constructions.hpp"
#include "rana/error.hpp"
#include "rana/semantics.hpp"

namespace rana {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

long double factorial(std::size_t k) {
  long double f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long double>(i);
  return f;
}

void record(PipelineReport& r, std::string stage, const Rana& a, Clock::time_point t0) {
  r.stages.push_back({std::move(stage), a.orbit_count(), a.degree(), 0, since(t0)});
}

// Replaces every |* in an AFA witness by its own name outside the alphabet.
BarString lift_witness(const BarString& w, const BarAfa& afa) {
  std::uint32_t next = 0;
  for (auto l : afa.alphabet) next = std::max(next, l.name.id + 1);
  std::vector<BarLetter> out;
  for (auto l : w) {
    if (afa.star && l.bar && l.name == *afa.star)
      out.push_back(BarLetter::bound(Name{next++}));
    else
      out.push_back(l);
  }
  return canonical(BarString(std::move(out)));
}

}  // namespace

bool PipelineReport::bounds_ok() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.ok(); });
}

EmptinessResult is_empty(const Rana& a) {
  EmptinessResult res;
  PipelineReport& rep = res.report;
  const auto n0 = static_cast<long double>(a.orbit_count());
  const auto k0 = static_cast<long double>(a.degree());

  auto t0 = Clock::now();
  Rana cur = a;
  record(rep, "input", cur, t0);
  if (uses_negation(cur)) {
    t0 = Clock::now();
    cur = dualize(cur);
    record(rep, "dualize", cur, t0);
  }
  if (uses_dual_atoms(cur)) {
    const auto n = static_cast<long double>(cur.orbit_count());
    const std::size_t k = cur.degree();
    t0 = Clock::now();
    cur = positivize(cur);
    record(rep, "positivize", cur, t0);
    rep.bounds.push_back({"positivize degree", static_cast<long double>(cur.degree()),
                          static_cast<long double>(2 * k + 1)});
    const long double kk = static_cast<long double>(k);
    rep.bounds.push_back({"positivize orbits", static_cast<long double>(cur.orbit_count()),
                          n * (kk + 2) * std::pow(2 * kk + 1, 2 * kk + 1) + 1});
  }
  {
    const auto n = static_cast<long double>(cur.orbit_count());
    const auto k = static_cast<long double>(cur.degree());
    t0 = Clock::now();
    cur = name_drop(cur);
    record(rep, "name_drop", cur, t0);
    rep.bounds.push_back({"name_drop orbits", static_cast<long double>(cur.orbit_count()), n * std::pow(2.0L, k)});
    rep.bounds.push_back({"pipeline orbits", static_cast<long double>(cur.orbit_count()),
                          (2 * n0 * (k0 + 2) + 1) * std::pow(2.0L, (2 * k0 + 1) * std::log2(4 * k0 + 2))});
  }

  t0 = Clock::now();
  const AfaTranslation tr = rana_to_barafa_detailed(cur);
  rep.stages.push_back({"barafa", 0, tr.k, tr.afa.state_count(), since(t0)});
  rep.bounds.push_back({"barafa states", static_cast<long double>(tr.afa.state_count()),
                        std::max<long double>(1, static_cast<long double>(cur.orbit_count()) * factorial(tr.k))});

  t0 = Clock::now();
  const AfaEmptiness e = afa_nonempty(tr.afa);
  rep.stages.push_back({"afa_nonempty", 0, 0, e.configurations, since(t0)});
  rep.configurations = e.configurations;
  res.empty = !e.nonempty;
  if (e.nonempty) {
    BarString w = lift_witness(e.witness, tr.afa);
    if (!accepts(a, w)) throw Error("is_empty: witness " + to_string(w) + " failed re-verification");
    res.witness = std::move(w);
  }
  return res;
}

Rana difference_automaton(const Rana& a1, const Rana& a2) {
  if (uses_dual_atoms(a1) || uses_dual_atoms(a2)) return intersection_(a1, complement(a2));
  // Ordinary on both sides: the union table with a negated second operand.
  const Rana u = union_(a1, a2);
  std::vector<Orbit> orbits = u.orbits();
  const Formula f1 = orbits[a1.initial_orbit()].formula;
  const Formula f2 = orbits[a1.orbit_count() + a2.initial_orbit()].formula;
  Orbit& init = orbits[u.initial_orbit()];
  init.name = init.name == "union" ? "diff" : init.name;
  init.formula = Formula::conj(f1, Formula::negate(f2));
  return Rana(std::move(orbits), u.initial_orbit(), Flavor::Ordinary, u.totality());
}

InclusionResult includes(const Rana& a1, const Rana& a2) {
  InclusionResult res;
  EmptinessResult e = is_empty(difference_automaton(a1, a2));
  res.holds = e.empty;
  res.report = std::move(e.report);
  if (e.witness) {
    if (!accepts(a1, *e.witness) || accepts(a2, *e.witness))
      throw Error("includes: counterexample " + to_string(*e.witness) + " failed re-verification");
    res.counterexample = std::move(e.witness);
  }
  return res;
}

bool equivalent(const Rana& a1, const Rana& a2) { return includes(a1, a2).holds && includes(a2, a1).holds; }

bool member_global(const Rana& a, const DataWord& u) {
  Evaluator ev(a);
  for (const auto& b : barrings(u))
    if (b.clean && b.closed && ev.accepts(b.word)) return true;
  return false;
}

bool member_local(const Rana& a, const DataWord& u) {
  Evaluator ev(a);
  for (const auto& b : barrings(u))
    if (b.closed && ev.accepts(b.word)) return true;
  return false;
}

LocalVerdict includes_local_bounded(const Rana& a1, const Rana& a2, std::size_t max_len, std::size_t pool) {
  LocalVerdict v;
  v.max_len = max_len;
  v.pool = pool;
  DataWord u;
  std::function<bool(std::size_t)> search = [&](std::size_t len) {
    if (u.size() == len) {
      if (member_local(a1, u) && !member_local(a2, u)) {
        v.refuted = true;
        v.witness = u;
        return true;
      }
      return false;
    }
    for (std::uint32_t i = 0; i < pool; ++i) {
      u.push_back(Name{i});
      const bool hit = search(len);
      u.pop_back();
      if (hit) return true;
    }
    return false;
  };
  for (std::size_t len = 0; len <= max_len; ++len)
    if (search(len)) break;
  return v;
}

}  // namespace rana
