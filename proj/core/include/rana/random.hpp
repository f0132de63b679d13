#pragma once

#include <cstdint>

#include "rana/rana.hpp"

namespace rana {

struct RandomOptions {
  Flavor flavor = Flavor::Positive;
  std::uint32_t max_orbits = 3;
  std::uint32_t max_arity = 2;
  std::uint32_t max_depth = 2;
};

// Small total automaton whose initial orbit has arity 0. Same seed, same
// automaton.
Rana random_rana(std::uint64_t seed, const RandomOptions& opts = {});

}  // namespace rana
