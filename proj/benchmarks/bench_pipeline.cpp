#include <benchmark/benchmark.h>

#include "rana/barstring.hpp"
#include "rana/constructions.hpp"
#include "rana/decision.hpp"
#include "rana/random.hpp"
#include "rana/semantics.hpp"
#include "rana/text.hpp"

namespace {

rana::Rana fixture(const char* name) { return rana::load_rana(std::string(RANA_FIXTURES) + "/" + name); }

void BM_Canonical(benchmark::State& st) {
  const auto words = rana::enumerate_closed(static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st)
    for (const auto& w : words) benchmark::DoNotOptimize(rana::canonical(w));
  st.counters["words"] = static_cast<double>(words.size());
}
BENCHMARK(BM_Canonical)->Arg(4)->Arg(6);

void BM_EnumerateLanguage(benchmark::State& st) {
  const rana::Rana a = fixture("two_binders.rana");
  for (auto _ : st) benchmark::DoNotOptimize(rana::enumerate_language(a, static_cast<std::size_t>(st.range(0)), 3));
}
BENCHMARK(BM_EnumerateLanguage)->Arg(4)->Arg(5);

void BM_IsEmptyFixture(benchmark::State& st) {
  const rana::Rana a = fixture(st.range(0) == 0 ? "two_binders.rana" : "negation.rana");
  for (auto _ : st) benchmark::DoNotOptimize(rana::is_empty(a).empty);
}
BENCHMARK(BM_IsEmptyFixture)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IsEmptyRandom(benchmark::State& st) {
  rana::RandomOptions opts;
  opts.flavor = static_cast<rana::Flavor>(st.range(0));
  std::vector<rana::Rana> corpus;
  for (std::uint64_t s = 0; s < 10; ++s) corpus.push_back(rana::random_rana(s, opts));
  for (auto _ : st)
    for (const auto& a : corpus) benchmark::DoNotOptimize(rana::is_empty(a).empty);
}
BENCHMARK(BM_IsEmptyRandom)
    ->Arg(static_cast<int>(rana::Flavor::Positive))
    ->Arg(static_cast<int>(rana::Flavor::Ordinary))
    ->Unit(benchmark::kMillisecond);

void BM_Dealternate(benchmark::State& st) {
  const rana::Rana nd = rana::dnf_normalize(rana::name_drop(fixture("growing_sets.rana")));
  for (auto _ : st) benchmark::DoNotOptimize(rana::dealternate(nd).orbit_count());
}
BENCHMARK(BM_Dealternate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
