#include "pdn/train.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pdn/batch.hpp"
#include "pdn/errors.hpp"
#include "pdn/optim.hpp"

namespace pdn {

namespace {

// component tags for seed derivation
constexpr std::uint64_t kSeedInit = 0x01;
constexpr std::uint64_t kSeedDropout = 0x02;
constexpr std::uint64_t kSeedShuffleBase = 0x1000;

std::string format_fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string first_nonfinite_tensor(const ParamStore& params) {
  for (const Param& p : params) {
    if (!p.value.all_finite()) return p.name;
    if (!p.grad.all_finite()) return p.name + ".grad";
  }
  return "loss";
}

}  // namespace

std::string epoch_report_line(const EpochReport& r) {
  std::string line = "epoch=" + std::to_string(r.epoch);
  line += " train_loss=" + format_fixed(r.train_loss);
  line += " train_acc=" + format_fixed(r.train_accuracy, 4);
  if (r.eval_accuracy >= 0.0) line += " eval_acc=" + format_fixed(r.eval_accuracy, 4);
  return line;
}

const EpochReport& TrainResult::best_epoch() const {
  if (reports.empty()) throw std::logic_error("best_epoch: no reports");
  const EpochReport* best = &reports.front();
  for (const EpochReport& r : reports)
    if (r.eval_accuracy > best->eval_accuracy) best = &r;
  return *best;
}

TrainResult train(const std::vector<Example>& train_examples, const std::vector<Example>& eval_examples,
                  const TrainConfig& config, const Vocab* vocab_in, const Tensor* pretrained_embeddings,
                  const SentimentModel* warm_start, const EpochCallback& on_epoch) {
  if (train_examples.empty()) throw std::invalid_argument("train: empty training set");
  config.validate();

  Vocab vocab = vocab_in ? *vocab_in : Vocab::build(train_examples);
  SentimentModel model(config.model, config.dims_for_vocab(vocab.size()), config.decay, config.dropout);
  model.freeze_embeddings = config.freeze_embeddings;

  Rng init_rng(derive_seed(config.seed, kSeedInit));
  model.init_params(init_rng);
  if (pretrained_embeddings) model.load_word_embeddings(*pretrained_embeddings);
  if (warm_start) model.copy_params_from(*warm_start);

  AdamState adam;
  adam.lr = config.lr;
  adam.attach(model.params());
  Rng dropout_rng(derive_seed(config.seed, kSeedDropout));

  TrainResult result{std::move(model), std::move(vocab), {}};
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto started = std::chrono::steady_clock::now();
    Rng shuffle_rng(derive_seed(config.seed, kSeedShuffleBase + static_cast<std::uint64_t>(epoch)));
    const std::vector<Batch> batches =
        make_batches(train_examples, result.vocab, config.max_len, config.batch_size, shuffle_rng, /*shuffle=*/true);

    double loss_sum = 0.0;
    long correct = 0, seen = 0;
    int batch_no = 0;
    for (const Batch& batch : batches) {
      ++batch_no;
      result.model.params().zero_grads();
      for (int row = 0; row < batch.rows; ++row) {
        const EncodedExample enc = batch.example(row);
        const auto where = [&] {
          return "epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_no) + " (tensor: " +
                 first_nonfinite_tensor(result.model.params()) + ")";
        };
        Tape tape;
        Var probs;
        Var loss;
        try {
          loss = result.model.forward_loss(tape, enc, /*training=*/true, dropout_rng, &probs);
        } catch (const NumericError& e) {
          throw NumericError("train: " + std::string(e.what()) + " at " + where());
        }
        const double loss_value = tape.value(loss).v[0];
        if (!std::isfinite(loss_value)) throw NumericError("train: non-finite loss at " + where());
        loss_sum += loss_value;
        correct += argmax_lowest(tape.value(probs).v) == enc.label;
        ++seen;
        tape.backward(loss, 1.0 / batch.rows);
      }
      adam_step(result.model.params(), adam);
    }

    EpochReport report;
    report.epoch = epoch;
    report.train_loss = loss_sum / static_cast<double>(seen);
    report.train_accuracy = static_cast<double>(correct) / static_cast<double>(seen);
    if (!eval_examples.empty()) report.eval_accuracy = evaluate(result.model, eval_examples, result.vocab);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.reports.push_back(report);
    if (on_epoch) on_epoch(report);
  }
  return result;
}

double evaluate(SentimentModel& model, const std::vector<Example>& examples, const Vocab& vocab) {
  if (examples.empty()) throw std::invalid_argument("evaluate: empty example set");
  long correct = 0;
  for (const Example& ex : examples) {
    const EncodedExample enc = encode_example(ex, vocab, model.dims().max_len);
    if (model.predict(enc) == enc.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

double majority_baseline(const std::vector<Example>& train_examples, const std::vector<Example>& test_examples) {
  if (train_examples.empty() || test_examples.empty())
    throw std::invalid_argument("majority_baseline: empty example set");
  std::array<long, 3> counts{0, 0, 0};
  for (const Example& ex : train_examples) counts[static_cast<int>(ex.label)] += 1;
  int majority = 0;
  for (int c = 1; c < 3; ++c)
    if (counts[c] > counts[majority]) majority = c;
  long correct = 0;
  for (const Example& ex : test_examples) correct += static_cast<int>(ex.label) == majority;
  return static_cast<double>(correct) / static_cast<double>(test_examples.size());
}

SentimentModel nbow_baseline(const TrainConfig& config, int vocab_size) {
  SentimentModel model(ModelKind::kNbow, config.dims_for_vocab(vocab_size), config.decay, config.dropout);
  model.freeze_embeddings = config.freeze_embeddings;
  return model;
}

SentimentModel lstm_baseline(const TrainConfig& config, int vocab_size) {
  SentimentModel model(ModelKind::kLstm, config.dims_for_vocab(vocab_size), config.decay, config.dropout);
  model.freeze_embeddings = config.freeze_embeddings;
  return model;
}

std::string attention_dump(SentimentModel& model, const Example& example, const Vocab& vocab) {
  const Example windowed = truncate_to_window(example, model.dims().max_len);
  const EncodedExample enc = encode_example(example, vocab, model.dims().max_len);
  ForwardTrace trace;
  model.predict_probs(enc, &trace);
  std::string out;
  if (model.kind() == ModelKind::kPdn) {
    for (std::size_t t = 0; t < windowed.tokens.size(); ++t) {
      out += "token=" + windowed.tokens[t];
      out += " p=" + std::to_string(trace.positions[t]);
      out += " decay=" + format_fixed(trace.decay_weights[t]);
      out += " alpha=" + format_fixed(trace.alpha[t]);
      out += " effective=" + format_fixed(trace.alpha[t] * trace.decay_weights[t]);
      out += '\n';
    }
  }
  out += "predicted=" + polarity_to_string(static_cast<Polarity>(trace.predicted));
  out += " probs=" + format_fixed(trace.probs[0]) + "," + format_fixed(trace.probs[1]) + "," +
         format_fixed(trace.probs[2]);
  out += '\n';
  return out;
}

}  // namespace pdn
