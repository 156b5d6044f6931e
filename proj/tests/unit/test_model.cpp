#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pdn/batch.hpp"
#include "pdn/checkpoint.hpp"
#include "pdn/errors.hpp"
#include "pdn/gradcheck.hpp"
#include "pdn/model.hpp"
#include "pdn/position.hpp"
#include "test_util.hpp"

using namespace pdn;
using pdn_test::TempDir;

namespace {

SentimentModel small_model(ModelKind kind, DecaySpec decay, std::uint64_t seed, int vocab = 12, int max_len = 10) {
  ModelDims dims;
  dims.vocab = vocab;
  dims.word_dim = 8;
  dims.pos_dim = 4;
  dims.hidden = 6;
  dims.pan_hidden = 5;
  dims.attn_hidden = 7;
  dims.penultimate = 9;
  dims.classes = 3;
  dims.max_len = max_len;
  SentimentModel model(kind, dims, decay, 0.5);
  Rng rng(seed);
  model.init_params(rng);
  return model;
}

EncodedExample example_for(const std::vector<int>& ids, int span_start, int span_end, int label, int max_len) {
  EncodedExample ex;
  ex.ids = ids;
  ex.positions = encode_positions(static_cast<int>(ids.size()), span_start, span_end);
  for (int& p : ex.positions) p = std::min(p, max_len);
  ex.label = label;
  return ex;
}

}  // namespace

TEST_CASE("lstm with all-zero weights emits zero states") {
  Tape tape;
  const int hidden = 4, in_dim = 3;
  const Var wx = tape.constant(Tensor::zeros({4 * hidden, in_dim}));
  const Var wh = tape.constant(Tensor::zeros({4 * hidden, hidden}));
  const Var b = tape.constant(Tensor::zeros({4 * hidden}));
  std::vector<Var> inputs;
  for (int t = 0; t < 5; ++t) inputs.push_back(tape.constant(Tensor({in_dim}, {0.3, -0.7, 1.1})));
  for (Var h : lstm_unroll(tape, inputs, wx, wh, b))
    for (double v : tape.value(h).v) CHECK(v == 0.0);
}

TEST_CASE("lstm single step agrees with direct gate arithmetic") {
  // scalar LSTM, one step, hand-picked weights
  const double wx_i = 0.4, wx_f = -0.3, wx_g = 0.8, wx_o = 0.2;
  const double b_i = 0.1, b_f = 1.0, b_g = -0.2, b_o = 0.05;
  const double x = 0.7;

  Tape tape;
  const Var wx = tape.constant(Tensor({4, 1}, {wx_i, wx_f, wx_g, wx_o}));
  const Var wh = tape.constant(Tensor({4, 1}, {0.5, -0.5, 0.25, 0.75}));  // h0 = 0, so unused here
  const Var b = tape.constant(Tensor({4}, {b_i, b_f, b_g, b_o}));
  const std::vector<Var> states = lstm_unroll(tape, {tape.constant(Tensor({1}, {x}))}, wx, wh, b);
  REQUIRE(states.size() == 1);

  auto sigmoid = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  const double i = sigmoid(wx_i * x + b_i);
  const double g = std::tanh(wx_g * x + b_g);
  const double o = sigmoid(wx_o * x + b_o);
  const double c = i * g;  // forget gate scales c0 = 0
  CHECK(tape.value(states[0]).v[0] == doctest::Approx(o * std::tanh(c)).epsilon(1e-15));
}

TEST_CASE("lstm zero-candidate step emits zero state") {
  Tape tape;
  const Var wx = tape.constant(Tensor::zeros({4, 1}));
  const Var wh = tape.constant(Tensor::zeros({4, 1}));
  const Var b = tape.constant(Tensor::zeros({4}));
  const std::vector<Var> states = lstm_unroll(tape, {tape.constant(Tensor({1}, {3.0}))}, wx, wh, b);
  // gates sit at sigma(0), the candidate at tanh(0) = 0, so h stays 0
  CHECK(tape.value(states[0]).v[0] == 0.0);
}

TEST_CASE("pan attention: zero score vector means uniform attention") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 101);
  model.params().get("pan.score_v").value.fill(0.0);
  const EncodedExample ex = example_for({2, 3, 4, 5, 6}, 2, 2, 0, 10);
  ForwardTrace trace;
  model.predict_probs(ex, &trace);
  for (double a : trace.alpha) CHECK(a == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("pan attention: single token gets weight one regardless of weights") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kTangent, 0.45}, seed);
    ForwardTrace trace;
    model.predict_probs(example_for({7}, 1, 1, 2, 10), &trace);
    REQUIRE(trace.alpha.size() == 1);
    CHECK(trace.alpha[0] == 1.0);
  }
}

TEST_CASE("alpha is a distribution for random parameterizations") {
  Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kExponential, rng.uniform(0.0, 2.0)},
                                       rng.next_u64());
    const int len = rng.uniform_int(1, 9);
    std::vector<int> ids;
    for (int i = 0; i < len; ++i) ids.push_back(rng.uniform_int(2, 11));
    const int s = rng.uniform_int(1, len);
    ForwardTrace trace;
    model.predict_probs(example_for(ids, s, s, 0, 10), &trace);
    double total = 0.0;
    for (double a : trace.alpha) {
      CHECK(a >= 0.0);
      total += a;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("dwn_combine hand values") {
  Tape tape;
  // n=2, h = [[1,0],[0,1]], alpha = [0.5,0.5], p = [1,2], inverse lambda=1
  const std::vector<Var> states{tape.constant(Tensor({2}, {1, 0})), tape.constant(Tensor({2}, {0, 1}))};
  const Var alpha = tape.constant(Tensor({2}, {0.5, 0.5}));
  const Var pooled = dwn_combine(tape, states, alpha, {1, 2}, {DecayKind::kInverse, 1.0});
  CHECK(tape.value(pooled).v[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tape.value(pooled).v[1] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("dwn_combine with identity decay is the attention-weighted mean") {
  Rng rng(107);
  Tape tape;
  std::vector<Var> states;
  std::vector<double> weights{0.2, 0.5, 0.3};
  for (int t = 0; t < 3; ++t) {
    Tensor h({4});
    for (double& v : h.v) v = rng.uniform(-1, 1);
    states.push_back(tape.constant(h));
  }
  const Var alpha = tape.constant(Tensor({3}, weights));
  const Var pooled = dwn_combine(tape, states, alpha, {1, 2, 3}, {DecayKind::kExponential, 0.0});
  for (int i = 0; i < 4; ++i) {
    double expect = 0.0;
    for (int t = 0; t < 3; ++t) expect += weights[t] * tape.value(states[t]).v[i];
    CHECK(tape.value(pooled).v[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("dwn_combine with one-hot attention picks a single decayed state") {
  Tape tape;
  std::vector<Var> states{tape.constant(Tensor({2}, {1.5, -2.0})), tape.constant(Tensor({2}, {0.25, 4.0}))};
  const Var alpha = tape.constant(Tensor({2}, {0.0, 1.0}));
  const DecaySpec spec{DecayKind::kTangent, 0.45};
  const Var pooled = dwn_combine(tape, states, alpha, {2, 3}, spec);
  const double d = decay(spec, 3);
  CHECK(tape.value(pooled).v[0] == doctest::Approx(0.25 * d).epsilon(1e-12));
  CHECK(tape.value(pooled).v[1] == doctest::Approx(4.0 * d).epsilon(1e-12));
}

TEST_CASE("dwn adds no trainable parameters: the store is exactly embeddings+lstm+pan+head") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 109, /*vocab=*/12,
                                     /*max_len=*/10);
  const ModelDims& d = model.dims();
  const long long embeddings = 1LL * d.vocab * d.word_dim + 1LL * d.max_len * d.pos_dim;
  const long long lstm = 4LL * d.hidden * d.word_dim + 4LL * d.hidden * d.hidden + 4LL * d.hidden;
  const long long pan = 1LL * d.pan_hidden * d.pos_dim + d.pan_hidden + 1LL * d.pan_hidden * d.hidden +
                        d.pan_hidden + 1LL * d.attn_hidden * 2 * d.pan_hidden + d.attn_hidden + d.attn_hidden;
  const long long head = 1LL * d.penultimate * d.hidden + d.penultimate + 1LL * d.classes * d.penultimate + d.classes;
  CHECK(model.params().total_values() == embeddings + lstm + pan + head);
}

TEST_CASE("classifier head: zero output layer gives the uniform distribution") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 113);
  model.params().get("head.out_w").value.fill(0.0);
  model.params().get("head.out_b").value.fill(0.0);
  const std::vector<double> probs = model.predict_probs(example_for({4, 5, 6}, 1, 1, 0, 10));
  for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("inference is dropout-free and repeatable") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kExponential, 0.3}, 127);
  const EncodedExample ex = example_for({2, 9, 4, 7}, 3, 3, 1, 10);
  CHECK(model.predict_probs(ex) == model.predict_probs(ex));
}

TEST_CASE("probabilities sum to one for random models") {
  Rng rng(131);
  for (int trial = 0; trial < 20; ++trial) {
    SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 0.9}, rng.next_u64());
    const std::vector<double> probs = model.predict_probs(example_for({2, 3, 4, 5, 6, 7}, 4, 5, 2, 10));
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("aspect-only sentence: full attention, pooled state is the decayed first state") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 137);
  ForwardTrace trace;
  model.predict_probs(example_for({5}, 1, 1, 0, 10), &trace);
  CHECK(trace.alpha == std::vector<double>{1.0});
  const double d = decay(model.decay_spec(), 1);
  for (int i = 0; i < model.dims().hidden; ++i)
    CHECK(trace.pooled.v[i] == doctest::Approx(trace.hidden.row(0)[i] * d).epsilon(1e-12));
  double total = 0.0;
  for (double p : trace.probs) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("same tokens, different span: encodings and (generically) outputs differ") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 139);
  const std::vector<int> ids{2, 3, 4, 5, 6, 7};
  const EncodedExample a = example_for(ids, 1, 1, 0, 10);
  const EncodedExample b = example_for(ids, 6, 6, 0, 10);
  CHECK(a.positions != b.positions);
  CHECK(model.predict_probs(a) != model.predict_probs(b));
}

TEST_CASE("padding near the window edge never changes the encoded example") {
  // batches pad to the window width; the encoded view strips it again
  std::vector<Example> data{{{"w01", "asp", "w02"}, 2, 2, Polarity::kPositive}};
  Vocab vocab = Vocab::build(data);
  Rng rng(149);
  const std::vector<Batch> wide = make_batches(data, vocab, 9, 1, rng, false);
  const std::vector<Batch> tight = make_batches(data, vocab, 3, 1, rng, false);
  CHECK(wide[0].example(0).ids == tight[0].example(0).ids);
  CHECK(wide[0].example(0).positions == tight[0].example(0).positions);

  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kTangent, 0.45}, 151, vocab.size(), 9);
  CHECK(model.predict_probs(wide[0].example(0)) == model.predict_probs(tight[0].example(0)));
}

TEST_CASE("steep exponential decay suppresses distant tokens below the analytic bound") {
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kExponential, 5.0}, 157);
  ForwardTrace trace;
  // span at token 1; the last token sits at distance 5 => p = 6
  model.predict_probs(example_for({2, 3, 4, 5, 6, 7}, 1, 1, 0, 10), &trace);
  const double bound = std::exp(-25.0);
  for (int t = 0; t < 6; ++t) {
    if (trace.positions[t] < 6) continue;
    for (int i = 0; i < model.dims().hidden; ++i)
      CHECK(std::abs(trace.decayed.row(t)[i]) <= bound * std::abs(trace.hidden.row(t)[i]) + 1e-300);
  }
}

TEST_CASE("full-model gradient check on a six-token example, all decay kinds") {
  for (DecayKind kind : {DecayKind::kInverse, DecayKind::kExponential, DecayKind::kTangent}) {
    const GradCheckReport report = run_model_gradcheck(ModelKind::kPdn, kind, 2024, 6);
    CAPTURE(decay_kind_to_string(kind));
    CHECK(report.worst < 1e-4);
    CHECK(report.entries.size() == 16);  // every tensor reported once
  }
}

TEST_CASE("gradient check covers the baselines too") {
  CHECK(run_model_gradcheck(ModelKind::kNbow, DecayKind::kInverse, 31, 6).passed());
  CHECK(run_model_gradcheck(ModelKind::kLstm, DecayKind::kInverse, 37, 6).passed());
}

TEST_CASE("deliberately broken decay gradient is caught") {
  const GradCheckReport report =
      run_model_gradcheck(ModelKind::kPdn, DecayKind::kInverse, 41, 6, /*break_decay_gradient=*/true);
  CHECK_FALSE(report.passed());
}

TEST_CASE("forward and backward stay finite over random configurations") {
  Rng rng(163);
  for (int trial = 0; trial < 20; ++trial) {
    const DecayKind kind = static_cast<DecayKind>(rng.uniform_int(0, 2));
    const double lambda = kind == DecayKind::kInverse ? rng.uniform(0.05, 3.0) : rng.uniform(0.0, 3.0);
    SentimentModel model = small_model(ModelKind::kPdn, {kind, lambda}, rng.next_u64());
    const int len = rng.uniform_int(1, 10);
    std::vector<int> ids;
    for (int i = 0; i < len; ++i) ids.push_back(rng.uniform_int(0, 11));
    const int s = rng.uniform_int(1, len);
    const EncodedExample ex = example_for(ids, s, std::min(len, s + rng.uniform_int(0, 2)), rng.uniform_int(0, 2), 10);

    model.params().zero_grads();
    Tape tape;
    Rng drop(rng.next_u64());
    const Var loss = model.forward_loss(tape, ex, /*training=*/true, drop);
    CHECK(std::isfinite(tape.value(loss).v[0]));
    tape.backward(loss);
    for (const Param& p : model.params()) {
      CHECK(p.value.all_finite());
      CHECK(p.grad.all_finite());
    }
  }
}

TEST_CASE("checkpoint round-trip is bitwise exact") {
  TempDir tmp;
  SentimentModel model = small_model(ModelKind::kPdn, {DecayKind::kInverse, 1.1333}, 167);
  TrainConfig config;
  config.word_dim = 8;
  config.pos_dim = 4;
  config.hidden = 6;
  config.pan_hidden = 5;
  config.attn_hidden = 7;
  config.penultimate = 9;
  config.max_len = 10;
  config.seed = 999;
  Vocab vocab;
  for (int i = 0; i < 10; ++i) vocab.add("tok" + std::to_string(i));

  const std::string path = tmp.path("model.ckpt");
  save_checkpoint(model, config, vocab, path);
  const LoadedCheckpoint loaded = load_checkpoint(path);

  CHECK(loaded.config.seed == config.seed);
  CHECK(loaded.config.decay.lambda == config.decay.lambda);
  CHECK(loaded.vocab.size() == vocab.size());
  for (int i = 0; i < vocab.size(); ++i) CHECK(loaded.vocab.token(i) == vocab.token(i));
  auto it = loaded.model.params().begin();
  for (const Param& p : model.params()) {
    CHECK(it->name == p.name);
    CHECK(it->value.dims == p.value.dims);
    CHECK(it->value.v == p.value.v);  // exact: parameters live on the float grid
    ++it;
  }
}

TEST_CASE("checkpoint rejects corruption with offset diagnostics") {
  TempDir tmp;
  SentimentModel model = small_model(ModelKind::kNbow, {DecayKind::kInverse, 1.1333}, 173);
  TrainConfig config;
  config.model = ModelKind::kNbow;
  config.word_dim = 8;
  config.hidden = 6;
  config.penultimate = 9;
  config.max_len = 10;
  Vocab vocab;
  for (int i = 0; i < 10; ++i) vocab.add("tok" + std::to_string(i));
  const std::string path = tmp.path("model.ckpt");
  save_checkpoint(model, config, vocab, path);

  std::string bytes = TempDir::read_file(path);
  SUBCASE("bad magic") {
    bytes[0] = 'X';
    TempDir::write_file(path, bytes);
    CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("bad magic"), DataError);
  }
  SUBCASE("truncation") {
    TempDir::write_file(path, bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("truncated at offset"), DataError);
  }
  SUBCASE("no partial file left behind by failed writes") {
    CHECK_THROWS_AS(
        save_checkpoint(model, config, vocab, tmp.path("missing_dir") + "/nested/model.ckpt"), DataError);
    CHECK_FALSE(std::filesystem::exists(tmp.path("missing_dir")));
  }
}
