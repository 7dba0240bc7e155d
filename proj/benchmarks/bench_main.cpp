#include <benchmark/benchmark.h>

#include "weylham/catalog.hpp"
#include "weylham/expr.hpp"
#include "weylham/maps.hpp"
#include "weylham/numerics.hpp"

using namespace weylham;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load_default();
  return c;
}

void BM_PolynomialProduct(benchmark::State& st) {
  auto al = Alphabet::make({"q1", "p1", "q2", "p2", "alpha0"});
  auto a = parse_poly("(q1^2*p1 + alpha0*q1 - q2^2/2 - p2^3 - 3/20*p2 + p1*p2)^3", al);
  auto b = parse_poly("(p1 + 4*q1^2*p2 - 2*p2^2 + 4*q1*q2 - 3/10)^3", al);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialProduct);

void BM_RationalSum(benchmark::State& st) {
  auto al = Alphabet::make({"x", "y", "a"});
  auto f = parse_expr("(x^2 + a*y)/(x*y - a)", al);
  auto g = parse_expr("(y^3 - a)/(x^2*y + a*x)", al);
  for (auto _ : st) benchmark::DoNotOptimize(f + g);
}
BENCHMARK(BM_RationalSum);

void BM_CatalogLoad(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(Catalog::load_default());
}
BENCHMARK(BM_CatalogLoad)->Unit(benchmark::kMillisecond);

void BM_Compatibility6(benchmark::State& st) {
  const auto& s = catalog().system("sys.94");
  for (auto _ : st) benchmark::DoNotOptimize(compatibility_residual(s, "t", "s"));
}
BENCHMARK(BM_Compatibility6)->Unit(benchmark::kMillisecond);

// the reflection with the largest denominators in the catalog
void BM_SymmetryReflection6(benchmark::State& st) {
  const auto& m = catalog().map("gen.thm74.s1.corrected");
  const auto& s = catalog().system("sys.94");
  for (auto _ : st) benchmark::DoNotOptimize(is_symmetry(m, s));
}
BENCHMARK(BM_SymmetryReflection6)->Unit(benchmark::kMillisecond);

void BM_Integrate(benchmark::State& st) {
  CompiledSystem cs(catalog().system("sys.29"), {{"alpha0", 0.3}});
  IntegrateOptions opt;
  opt.tol = 1e-12;
  for (auto _ : st) benchmark::DoNotOptimize(integrate_flow(cs, "t", {0.1, 0.1, 0.1, 0.1}, 0, 1, opt));
}
BENCHMARK(BM_Integrate)->Unit(benchmark::kMicrosecond);

void BM_AllClaims(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_claims(catalog(), "*", 1));
}
BENCHMARK(BM_AllClaims)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
