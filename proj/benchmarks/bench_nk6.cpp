#include "nk6/nk6.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nk6;

namespace {

const MulTable& table() {
  static const MulTable t = MulTable::cayley_dickson();
  return t;
}

SFF random_sff(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::array<double, 10> c;
  for (double& v : c) v = u(rng);
  c[0] = -(c[3] + c[5]);
  c[6] = -(c[1] + c[8]);
  c[9] = -(c[2] + c[7]);
  return SFF::from_symmetric(c);
}

void BM_Cross(benchmark::State& state) {
  const Vec7 a = Vec7::LinSpaced(0.1, 0.7), b = Vec7::LinSpaced(-0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(table().cross(a, b));
}
BENCHMARK(BM_Cross);

void BM_MaximizeTheta(benchmark::State& state) {
  const SFF h = random_sff(1);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_theta(h));
}
BENCHMARK(BM_MaximizeTheta);

void BM_CanonicalBasis(benchmark::State& state) {
  const SFF h = random_sff(2);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_basis(h));
}
BENCHMARK(BM_CanonicalBasis);

void BM_FrameAndSff(benchmark::State& state) {
  const auto dvv = dvv_immersion();
  const ChartPoint q(0.6, 1.2, 2.3);
  FrameOptions opts;
  opts.jet_order = 2;
  for (auto _ : state) benchmark::DoNotOptimize(second_fundamental_form(frame(*dvv, q, table(), opts)));
}
BENCHMARK(BM_FrameAndSff);

void BM_NablaH(benchmark::State& state) {
  const auto dvv = dvv_immersion();
  const FramePacket fr = frame(*dvv, ChartPoint(0.6, 1.2, 2.3), table());
  for (auto _ : state) benchmark::DoNotOptimize(nabla_h(fr, table()));
}
BENCHMARK(BM_NablaH);

void BM_FdJet(benchmark::State& state) {
  const auto dvv = dvv_immersion();
  const ChartPoint q(0.6, 1.2, 2.3);
  for (auto _ : state) benchmark::DoNotOptimize(fd_jet(*dvv, q, 3));
}
BENCHMARK(BM_FdJet);

void BM_AnalyzePoint(benchmark::State& state) {
  const auto dvv = dvv_immersion();
  const ChartPoint q(0.6, 1.2, 2.3);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_point(*dvv, q, table()));
}
BENCHMARK(BM_AnalyzePoint);

void BM_Integrate(benchmark::State& state) {
  const auto dvv = dvv_immersion();
  const int n = static_cast<int>(state.range(0));
  InequalityOptions opts;
  opts.check_refinement = false;
  opts.keep_samples = false;
  opts.threads = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_inequality(*dvv, table(), QuadratureRule{n, n, n}, opts));
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_Integrate)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
