#include <benchmark/benchmark.h>

#include "mrb/tensor.hpp"

using namespace mrb;

namespace {

void BM_TensorRestrictedFree(benchmark::State& state) {
  auto inst = verified_instance(catalog::by_name("scaled_projection(2,3,5)"));
  std::vector<std::string> gens;
  for (long k = 0; k < state.range(0); ++k) gens.push_back("x" + std::to_string(k));
  FdLeftModule f = restricted_free(inst, gens).module;
  FdRightModule r = regular_right(inst);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_product(r, f).dim());
}
BENCHMARK(BM_TensorRestrictedFree)->Arg(1)->Arg(4)->Arg(8);

void BM_HomSpace(benchmark::State& state) {
  auto inst = verified_instance(catalog::by_name("upper_triangular"));
  std::vector<std::string> gens;
  for (long k = 0; k < state.range(0); ++k) gens.push_back("x" + std::to_string(k));
  FdLeftModule f = restricted_free(inst, gens).module;
  for (auto _ : state) benchmark::DoNotOptimize(hom_space(f, f).dim());
}
BENCHMARK(BM_HomSpace)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FlatnessProbe(benchmark::State& state) {
  auto inst = verified_instance(catalog::by_name("scaled_projection(1,2)"));
  auto injections = catalog_injections<Side::left>(inst);
  FdRightModule r = regular_right(inst);
  for (auto _ : state) benchmark::DoNotOptimize(flatness_probe(r, injections).all_preserved());
}
BENCHMARK(BM_FlatnessProbe)->Unit(benchmark::kMillisecond);

void BM_Adjunction(benchmark::State& state) {
  auto inst = verified_instance(catalog::by_name("scaled_projection(2,3,5)"));
  FdBimodule bi = regular_bimodule(inst);
  FdRightModule r = regular_right(inst);
  for (auto _ : state) benchmark::DoNotOptimize(adjunction_check(r, bi, r).ok());
}
BENCHMARK(BM_Adjunction)->Unit(benchmark::kMillisecond);

}  // namespace
