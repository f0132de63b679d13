#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rana/barafa.hpp"
#include "rana/barstring.hpp"
#include "rana/rana.hpp"

namespace rana {

struct StageStats {
  std::string stage;
  std::size_t orbits = 0;
  std::size_t degree = 0;
  std::size_t states = 0;  // AFA states, or 0 for automaton stages
  double millis = 0;
};

struct BoundCheck {
  std::string what;
  long double value = 0;
  long double bound = 0;
  bool ok() const { return value <= bound; }
};

struct PipelineReport {
  std::vector<StageStats> stages;
  std::vector<BoundCheck> bounds;
  std::size_t configurations = 0;  // explored by the AFA emptiness search

  bool bounds_ok() const;
};

struct EmptinessResult {
  bool empty = true;
  std::optional<BarString> witness;  // accepted by the input when nonempty
  PipelineReport report;
};

EmptinessResult is_empty(const Rana& a);

struct InclusionResult {
  bool holds = true;
  std::optional<BarString> counterexample;  // accepted by a1, rejected by a2
  PipelineReport report;
};

// Builds the automaton for init1 /\ ~init2 and decides its emptiness.
Rana difference_automaton(const Rana& a1, const Rana& a2);
InclusionResult includes(const Rana& a1, const Rana& a2);
bool equivalent(const Rana& a1, const Rana& a2);

// Data-word membership under global (clean barrings) and local freshness.
bool member_global(const Rana& a, const DataWord& u);
bool member_local(const Rana& a, const DataWord& u);

struct LocalVerdict {
  bool refuted = false;
  std::optional<DataWord> witness;  // locally accepted by a1, not by a2
  std::size_t max_len = 0;
  std::size_t pool = 0;
};

// Semi-decision: searches data words of length <= max_len over names
// 0..pool-1. A non-refuted verdict says nothing beyond the bound.
LocalVerdict includes_local_bounded(const Rana& a1, const Rana& a2, std::size_t max_len, std::size_t pool);

}  // namespace rana
