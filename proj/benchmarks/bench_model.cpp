#include <benchmark/benchmark.h>

#include "pdn/batch.hpp"
#include "pdn/model.hpp"
#include "pdn/position.hpp"
#include "pdn/synth.hpp"

using namespace pdn;

namespace {

// Stock dimensions with a compact vocabulary; sentence length is the knob.
SentimentModel make_model(ModelKind kind, int max_len) {
  ModelDims dims;
  dims.vocab = 64;
  dims.word_dim = 300;
  dims.pos_dim = 25;
  dims.hidden = 100;
  dims.pan_hidden = 50;
  dims.attn_hidden = 50;
  dims.penultimate = 64;
  dims.max_len = max_len;
  SentimentModel model(kind, dims, {DecayKind::kInverse, 1.1333}, 0.5);
  Rng rng(7);
  model.init_params(rng);
  return model;
}

EncodedExample make_example(int len, int max_len) {
  Rng rng(11);
  EncodedExample ex;
  for (int i = 0; i < len; ++i) ex.ids.push_back(rng.uniform_int(2, 63));
  const int span = rng.uniform_int(1, len);
  ex.positions = encode_positions(len, span, span);
  for (int& p : ex.positions) p = std::min(p, max_len);
  ex.label = 2;
  return ex;
}

}  // namespace

static void BM_PdnForward(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  SentimentModel model = make_model(ModelKind::kPdn, 80);
  const EncodedExample ex = make_example(len, 80);
  Rng rng(13);
  for (auto _ : state) {
    Tape tape;
    benchmark::DoNotOptimize(tape.value(model.forward_loss(tape, ex, false, rng)).v[0]);
  }
}
BENCHMARK(BM_PdnForward)->Arg(12)->Arg(40)->Arg(80);

static void BM_PdnForwardBackward(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  SentimentModel model = make_model(ModelKind::kPdn, 80);
  const EncodedExample ex = make_example(len, 80);
  Rng rng(13);
  for (auto _ : state) {
    model.params().zero_grads();
    Tape tape;
    const Var loss = model.forward_loss(tape, ex, true, rng);
    tape.backward(loss);
    benchmark::DoNotOptimize(tape.value(loss).v[0]);
  }
}
BENCHMARK(BM_PdnForwardBackward)->Arg(12)->Arg(40)->Arg(80);

static void BM_LstmBaselineForward(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  SentimentModel model = make_model(ModelKind::kLstm, 80);
  const EncodedExample ex = make_example(len, 80);
  Rng rng(13);
  for (auto _ : state) {
    Tape tape;
    benchmark::DoNotOptimize(tape.value(model.forward_loss(tape, ex, false, rng)).v[0]);
  }
}
BENCHMARK(BM_LstmBaselineForward)->Arg(40);

BENCHMARK_MAIN();
