#include <benchmark/benchmark.h>

#include "smashkit/finite_model.hpp"
#include "smashkit/induction.hpp"

using namespace smashkit;

namespace {

// A chain of n push letters that cancels down to nothing.
PathExpr zigzag(int n) {
  Shape A = Shape::leaf("A"), B = Shape::leaf("B"), AB = Shape::smash(A, B);
  PathExpr l = PathExpr::push_l(AB, Term::var("a", A));
  std::vector<PathExpr> parts;
  for (int i = 0; i < n; ++i) parts.push_back(i % 2 ? PathExpr::inv(l) : l);
  return PathExpr::comp(parts);
}

void BM_Normalize(benchmark::State& state) {
  PathExpr p = zigzag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Normalize)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_Discharge(benchmark::State& state, const char* name) {
  auto d = diagram(name);
  for (auto _ : state) benchmark::DoNotOptimize(discharge(obligations_for(Homotopy::of(d))));
}
BENCHMARK_CAPTURE(BM_Discharge, involution, "involution");
BENCHMARK_CAPTURE(BM_Discharge, hexagon, "hexagon");
BENCHMARK_CAPTURE(BM_Discharge, pentagon, "pentagon");

void BM_ModelPentagon(benchmark::State& state) {
  auto d = diagram("pentagon");
  std::size_t n = static_cast<std::size_t>(state.range(0));
  auto sizes = sizes_for(d.domain(), {n, n, n, n});
  for (auto _ : state) benchmark::DoNotOptimize(check_diagram(d, sizes));
}
BENCHMARK(BM_ModelPentagon)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
