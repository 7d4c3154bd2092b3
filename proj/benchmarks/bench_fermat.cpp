#include <benchmark/benchmark.h>

#include "fermat/arith.hpp"
#include "fermat/char_sums.hpp"
#include "fermat/count.hpp"

using namespace fermat;

namespace {

const FieldPtr& field_for(std::int64_t q) {
  static const FieldPtr f81 = build_field(3, 4);
  static const FieldPtr f4096 = build_field(2, 12);
  static const FieldPtr f6561 = build_field(3, 8);
  switch (q) {
    case 81: return f81;
    case 4096: return f4096;
    default: return f6561;
  }
}

HypersurfaceSpec ones(const FieldPtr& ctx, std::vector<std::uint32_t> d) {
  const std::size_t s = d.size();
  return {ctx, std::move(d), std::vector<FieldElement>(s, ctx->one()), ctx->one()};
}

void BM_BuildField(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_field(2, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_BuildField)->Arg(8)->Arg(12)->Arg(16);

void BM_GaussSumDirect(benchmark::State& state) {
  const auto& ctx = field_for(state.range(0));
  const MultiplicativeCharacter chi(ctx, 5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum(chi).value);
}
BENCHMARK(BM_GaussSumDirect)->Arg(81)->Arg(4096)->Arg(6561);

void BM_GaussSumTable(benchmark::State& state) {
  const auto& ctx = field_for(state.range(0));
  for (auto _ : state) {
    const GaussSumTable table(ctx, 5);
    for (std::uint32_t u = 1; u < 5; ++u) benchmark::DoNotOptimize(table[u]);
  }
}
BENCHMARK(BM_GaussSumTable)->Arg(81)->Arg(4096)->Arg(6561);

void BM_CountBruteforce(benchmark::State& state) {
  const auto spec = ones(field_for(81), std::vector<std::uint32_t>(static_cast<std::size_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(count_bruteforce(spec).n_points);
}
BENCHMARK(BM_CountBruteforce)->Arg(2)->Arg(3)->Arg(5);

void BM_CountCharsum(benchmark::State& state) {
  const auto spec = ones(field_for(81), std::vector<std::uint32_t>(static_cast<std::size_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(count_charsum(spec).n_points);
}
BENCHMARK(BM_CountCharsum)->Arg(2)->Arg(3)->Arg(5);

void BM_CountFormula(benchmark::State& state) {
  const auto spec = ones(field_for(81), std::vector<std::uint32_t>(static_cast<std::size_t>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(count_formula(spec).n_points);
}
BENCHMARK(BM_CountFormula)->Arg(2)->Arg(3)->Arg(5);

const std::vector<std::uint32_t> kExponents{6, 8, 9, 10, 12};

void BM_ICountDirect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(i_count_direct(kExponents));
}
BENCHMARK(BM_ICountDirect);

void BM_ICountLcm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(i_count_lcm(kExponents));
}
BENCHMARK(BM_ICountLcm);

void BM_ICountInclusionExclusion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(i_count_inclusion_exclusion(kExponents));
}
BENCHMARK(BM_ICountInclusionExclusion);

}  // namespace
BENCHMARK_MAIN();
