#include <benchmark/benchmark.h>

#include "coxreg/cohomology.hpp"
#include "coxreg/groebner.hpp"
#include "coxreg/lab.hpp"
#include "coxreg/resolution.hpp"

using namespace coxreg;

namespace {

const char* kCurve =
    "x1^2 - x0*x2; y1^2 - y0*y2; x2*y0*y1 - x1*y2^2; x1*y0*y1 - x0*y2^2; "
    "x2*y0^2 - x1*y1*y2; x1*y0^2 - x0*y1*y2";

Ideal curve() {
  RingPtr r = make_ring(ProductSpace({2, 2}), Field::prime());
  return Ideal::parse(r, kCurve);
}

void BM_BuchbergerCurve(benchmark::State& state) {
  Ideal i = curve();
  TermOrder ord(i.ring());
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(ord, i.generators()).basis.size());
}
BENCHMARK(BM_BuchbergerCurve)->Unit(benchmark::kMillisecond);

void BM_ResolveCurve(benchmark::State& state) {
  Ideal i = curve();
  for (auto _ : state) benchmark::DoNotOptimize(resolve(i, ModuleKind::Quotient).length());
}
BENCHMARK(BM_ResolveCurve)->Unit(benchmark::kMillisecond);

void BM_CurveCohomology(benchmark::State& state) {
  Ideal i = curve();
  std::vector<MultiDegree> twists{MultiDegree({0, 5}), MultiDegree({1, 5})};
  for (auto _ : state) {
    CohomologyEngine engine;  // fresh caches every iteration
    benchmark::DoNotOptimize(engine.sheaf_cohomology_table(Module::of_ideal(i), twists).entries().size());
  }
}
BENCHMARK(BM_CurveCohomology)->Unit(benchmark::kMillisecond);

void BM_StructureSheafP1P1(benchmark::State& state) {
  RingPtr r = make_ring(ProductSpace({1, 1}), Field::prime());
  MultiDegree u({static_cast<int>(-state.range(0)), 0});
  for (auto _ : state) {
    CohomologyEngine engine;
    benchmark::DoNotOptimize(engine.sheaf_cohomology_dim(Module::structure(r), 1, u));
  }
}
BENCHMARK(BM_StructureSheafP1P1)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_MultiplicationRank(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  RingPtr r = make_ring(ProductSpace({2}), Field::prime());
  for (auto _ : state) benchmark::DoNotOptimize(multiplication_rank(r, MultiDegree({d}), MultiDegree({d})).rank);
}
BENCHMARK(BM_MultiplicationRank)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
