#include "rana/random.hpp"

#include <algorithm>
#include <random>

namespace rana {

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const RandomOptions& opts) : rng_(seed), opts_(opts) {}

  Rana run() {
    const std::uint32_t n = pick(1, opts_.max_orbits);
    arities_.assign(n, 0);
    for (std::uint32_t i = 1; i < n; ++i) arities_[i] = pick(0, opts_.max_arity);
    std::vector<Orbit> orbits(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      Orbit& o = orbits[i];
      o.name = "q" + std::to_string(i);
      o.arity = arities_[i];
      o.domain = full_mask(o.arity);
      o.family = i;
      o.formula = formula(o.arity, opts_.max_depth);
    }
    return Rana(std::move(orbits), 0, opts_.flavor, Totality::Total);
  }

 private:
  std::uint32_t pick(std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  Formula formula(std::uint32_t arity, std::uint32_t depth) {
    const bool may_not = opts_.flavor == Flavor::Ordinary;
    const bool may_and = opts_.flavor != Flavor::Ernna;
    if (depth > 0 && coin(0.55)) {
      if (may_not && coin(0.25)) return Formula::negate(formula(arity, depth - 1));
      Formula l = formula(arity, depth - 1), r = formula(arity, depth - 1);
      if (may_and && coin(0.5)) return Formula::conj(l, r);
      return Formula::disj(l, r);
    }
    return leaf(arity);
  }

  Formula leaf(std::uint32_t arity) {
    const bool dual = opts_.flavor == Flavor::ExplicitDual;
    const std::uint32_t roll = pick(0, 99);
    if (roll < 4) return Formula::top();
    if (roll < 8) return Formula::bottom();
    if (roll < 22) return dual && coin(0.4) ? Formula::neg_eps() : Formula::eps();
    const bool bar = arity == 0 || coin(0.5);
    const bool box = dual && coin(0.35);
    LetterRef letter = bar ? LetterRef::bound() : LetterRef::reg(pick(0, arity - 1));
    SymAtom at{letter, successor(arity, bar)};
    return box ? Formula::box(std::move(at)) : Formula::diamond(std::move(at));
  }

  // Fills every target slot from distinct sources: registers and, under a
  // bar, the bound name.
  Successor successor(std::uint32_t arity, bool bar) {
    std::vector<SlotSource> sources;
    for (std::uint32_t j = 0; j < arity; ++j) sources.push_back(SlotSource::reg(j));
    if (bar) sources.push_back(SlotSource::bound());
    std::vector<std::uint32_t> fits;
    for (std::uint32_t i = 0; i < arities_.size(); ++i)
      if (arities_[i] <= sources.size()) fits.push_back(i);
    Successor s;
    s.orbit = fits[pick(0, static_cast<std::uint32_t>(fits.size() - 1))];
    std::shuffle(sources.begin(), sources.end(), rng_);
    // Prefer keeping the bound name so fresh names get stored.
    if (bar && arities_[s.orbit] > 0 && coin(0.7)) {
      auto it = std::find(sources.begin(), sources.end(), SlotSource::bound());
      std::iter_swap(sources.begin(), it);
    }
    s.slots.assign(sources.begin(), sources.begin() + arities_[s.orbit]);
    return s;
  }

  std::mt19937_64 rng_;
  RandomOptions opts_;
  std::vector<std::uint32_t> arities_;
};

}  // namespace

Rana random_rana(std::uint64_t seed, const RandomOptions& opts) {
  Rana a = Generator(seed, opts).run();
  require_valid(a);
  return a;
}

}  // namespace rana
