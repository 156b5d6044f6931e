#include <benchmark/benchmark.h>

#include "pdn/autograd.hpp"
#include "pdn/decay.hpp"
#include "pdn/gradcheck.hpp"
#include "pdn/init.hpp"
#include "pdn/optim.hpp"
#include "pdn/position.hpp"

using namespace pdn;

static void BM_AffineForward(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(1);
  const Tensor w = glorot_init({dim, dim}, rng);
  const Tensor x = glorot_init({dim}, rng);
  const Tensor b = glorot_init({dim}, rng);
  for (auto _ : state) {
    Tape tape;
    benchmark::DoNotOptimize(tape.value(tape.affine(tape.constant(w), tape.constant(x), tape.constant(b))));
  }
}
BENCHMARK(BM_AffineForward)->Arg(64)->Arg(128)->Arg(256);

static void BM_MaskedSoftmax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  Tensor logits({n});
  for (double& v : logits.v) v = rng.uniform(-1, 1);
  const std::vector<std::uint8_t> mask(n, 1);
  for (auto _ : state) {
    Tape tape;
    benchmark::DoNotOptimize(tape.value(tape.masked_softmax(tape.constant(logits), mask)));
  }
}
BENCHMARK(BM_MaskedSoftmax)->Arg(20)->Arg(80);

static void BM_DecayFunctions(benchmark::State& state) {
  const DecaySpec specs[3] = {{DecayKind::kInverse, 1.1333}, {DecayKind::kExponential, 0.3},
                              {DecayKind::kTangent, 0.45}};
  double acc = 0;
  for (auto _ : state) {
    for (const DecaySpec& s : specs)
      for (int x = 1; x <= 80; ++x) acc += decay(s, x);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DecayFunctions);

static void BM_EncodePositions(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_positions(80, 37, 39));
  }
}
BENCHMARK(BM_EncodePositions);

static void BM_AdamStep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Rng rng(3);
  ParamStore store;
  Param& p = store.add("w", glorot_init({dim, dim}, rng));
  for (double& g : p.grad.v) g = rng.uniform(-0.01, 0.01);
  AdamState adam;
  adam.attach(store);
  for (auto _ : state) {
    adam_step(store, adam);
    benchmark::DoNotOptimize(p.value.v.data());
  }
}
BENCHMARK(BM_AdamStep)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
