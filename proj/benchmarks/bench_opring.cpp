#include <benchmark/benchmark.h>

#include "mrb/algebra.hpp"
#include "mrb/operated.hpp"
#include "mrb/opring.hpp"

using namespace mrb;

namespace {

const char* const kInstances[] = {"scaled_projection(1)", "scaled_projection(2,3,5)", "upper_triangular"};

void BM_NormalizeAllWords(benchmark::State& state) {
  OperatorRing ring(verified_instance(catalog::by_name(kInstances[state.range(0)])));
  auto words = ring.words(3);
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(ring.normal_form(OpElement::single(w)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
  state.SetLabel(kInstances[state.range(0)]);
}
BENCHMARK(BM_NormalizeAllWords)->DenseRange(0, 2);

void BM_Oracle(benchmark::State& state) {
  OperatorRing ring(verified_instance(catalog::by_name(kInstances[state.range(0)])));
  for (auto _ : state) benchmark::DoNotOptimize(TruncatedQuotientOracle(ring, 3).dim());
  state.SetLabel(kInstances[state.range(0)]);
}
BENCHMARK(BM_Oracle)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ConfluenceProbe(benchmark::State& state) {
  OperatorRing ring(verified_instance(catalog::by_name(kInstances[state.range(0)])));
  for (auto _ : state) benchmark::DoNotOptimize(confluence_probe(ring, 3).overlaps_checked);
  state.SetLabel(kInstances[state.range(0)]);
}
BENCHMARK(BM_ConfluenceProbe)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_IdealGeneratorCollapse(benchmark::State& state) {
  auto inst = verified_instance(catalog::by_name("scaled_projection(1,2)"));
  OperatorRing ring(inst);
  OperatedFree f(inst, {"x"});
  auto gens = f.ideal_generators(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    for (const auto& g : gens) benchmark::DoNotOptimize(ring.free_module_normal_form(ring.translate(g)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(gens.size()));
}
BENCHMARK(BM_IdealGeneratorCollapse)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
