#include <benchmark/benchmark.h>

#include <random>

#include "nfspectral/anharmonic.hpp"
#include "nfspectral/engine.hpp"
#include "nfspectral/oracle.hpp"

namespace {

// A[0,0,1] plus every basis term of degree 1..n with small random coefficients.
nfs::AElement dense_field(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  auto f = nfs::AElement::term(nfs::RingSpec::rationals(), 0, 0, 1);
  for (int p = 1; p <= n; ++p)
    for (const auto& t : nfs::grade_basis(p)) {
      nfs::Rational c(num(gen), den(gen));
      c.canonicalize();
      f.add(t, nfs::RingElem(f.spec(), c));
    }
  return f;
}

void BM_StructureConstants(benchmark::State& state) {
  for (auto _ : state) {
    auto report = nfs::oracle::check_structure_constants(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(report.pairs_checked);
  }
}
BENCHMARK(BM_StructureConstants)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_UniqueNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto v = dense_field(n, 7);
  for (auto _ : state) {
    auto result = nfs::unique_normal_form(v, n);
    benchmark::DoNotOptimize(result.field.size());
  }
}
BENCHMARK(BM_UniqueNormalForm)->Arg(8)->Arg(14)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto v = nfs::AElement::term(nfs::RingSpec::rationals(), 0, 0, 1);
  v.add(4, 0, 0, nfs::RingElem(v.spec(), 1));
  v.add(4, 0, 1, nfs::RingElem(v.spec(), 1));
  for (auto _ : state) {
    auto cmp = nfs::compare_with_engine(v, n);
    benchmark::DoNotOptimize(cmp.mismatches.size());
  }
}
BENCHMARK(BM_Classify)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
