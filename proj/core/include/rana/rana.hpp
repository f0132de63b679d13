#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rana/formula.hpp"

namespace rana {

enum class Flavor : std::uint8_t { Ordinary, Positive, ExplicitDual, Ernna };
enum class Totality : std::uint8_t { Total, Partial };

std::string_view to_string(Flavor f);
std::string_view to_string(Totality t);
std::optional<Flavor> parse_flavor(std::string_view s);
std::optional<Totality> parse_totality(std::string_view s);

inline std::uint32_t full_mask(std::uint32_t arity) {
  return arity >= 32 ? 0xffffffffu : (1u << arity) - 1u;
}

struct Orbit {
  std::string name;
  std::uint32_t arity = 0;
  std::uint32_t domain = 0;  // slots defined in every state of this orbit
  std::uint32_t family = 0;  // control state; orbits of one family differ only in domain
  Formula formula;
  std::string note;  // free-form provenance, printed as a comment
};

class Rana {
 public:
  Rana() = default;
  Rana(std::vector<Orbit> orbits, std::uint32_t initial_orbit, Flavor flavor, Totality totality);

  const std::vector<Orbit>& orbits() const { return orbits_; }
  const Orbit& orbit(std::uint32_t i) const { return orbits_.at(i); }
  const Formula& formula(std::uint32_t i) const { return orbits_.at(i).formula; }
  std::size_t orbit_count() const { return orbits_.size(); }
  std::uint32_t initial_orbit() const { return initial_; }
  State initial() const;
  Flavor flavor() const { return flavor_; }
  Totality totality() const { return totality_; }

  // Maximum number of defined registers over all orbits.
  std::size_t degree() const;
  std::size_t family_count() const;

  std::optional<std::uint32_t> find_orbit(std::uint32_t family, std::uint32_t domain) const;
  std::optional<std::uint32_t> find_orbit(std::string_view name) const;

  // The orbit formula simplifies to true.
  bool is_top(std::uint32_t orbit) const { return top_.at(orbit); }

 private:
  std::vector<Orbit> orbits_;
  std::uint32_t initial_ = 0;
  Flavor flavor_ = Flavor::Positive;
  Totality totality_ = Totality::Total;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> by_family_;
  std::vector<bool> top_;
};

// Resolves registers against `at`. Bar atoms bind `bound`, or the least name
// fresh for `at` when none is given.
ConcreteFormula instantiate(const Formula& f, const State& at, std::optional<Name> bound = std::nullopt);
ConcreteFormula transition(const Rana& a, const State& q, std::optional<Name> bound = std::nullopt);

bool fits_flavor(const Formula& f, Flavor flavor);
bool uses_negation(const Rana& a);
bool uses_dual_atoms(const Rana& a);

std::vector<std::string> validate(const Rana& a);
// Throws ValidationError carrying all diagnostics.
void require_valid(const Rana& a);

}  // namespace rana
