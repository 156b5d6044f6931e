#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdn/config.hpp"
#include "pdn/dataset.hpp"
#include "pdn/model.hpp"
#include "pdn/vocab.hpp"

namespace pdn {

struct EpochReport {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double eval_accuracy = -1.0;  // -1 when no eval set was given
  double wall_seconds = 0.0;    // informational; excluded from report streams
};

/// Deterministic key=value line for one epoch. Wall time is deliberately left
/// out so two identical runs emit identical streams.
std::string epoch_report_line(const EpochReport& report);

using EpochCallback = std::function<void(const EpochReport&)>;

struct TrainResult {
  SentimentModel model;
  Vocab vocab;
  std::vector<EpochReport> reports;

  const EpochReport& best_epoch() const;  // by eval accuracy, earliest wins ties
};

/// Full training run: per-epoch seeded shuffling, mean cross-entropy over
/// each batch, one Adam step per batch. Single-threaded and bit-reproducible
/// for a fixed config. Aborts with a NumericError naming epoch, batch and the
/// first non-finite tensor if the loss leaves the reals.
///
/// vocab: built from train_examples when null. pretrained_embeddings must be
/// aligned to the vocab when given. warm_start params are copied when given.
TrainResult train(const std::vector<Example>& train_examples, const std::vector<Example>& eval_examples,
                  const TrainConfig& config, const Vocab* vocab = nullptr,
                  const Tensor* pretrained_embeddings = nullptr, const SentimentModel* warm_start = nullptr,
                  const EpochCallback& on_epoch = {});

/// Share of examples whose argmax prediction matches the label. Ties in the
/// argmax break toward the lowest class index. Fails on an empty set.
double evaluate(SentimentModel& model, const std::vector<Example>& examples, const Vocab& vocab);

/// Predicts the most frequent training label for every test example.
double majority_baseline(const std::vector<Example>& train_examples, const std::vector<Example>& test_examples);

/// Untrained baseline models sharing the training loop: a bag of word
/// embeddings and an aspect-blind LSTM (both ignore span and positions).
SentimentModel nbow_baseline(const TrainConfig& config, int vocab_size);
SentimentModel lstm_baseline(const TrainConfig& config, int vocab_size);

/// Per-token introspection report for one example:
///   token=<text> p=<distance> decay=<d> alpha=<a> effective=<a*d>
/// followed by `predicted=<label> probs=<p0>,<p1>,<p2>`.
std::string attention_dump(SentimentModel& model, const Example& example, const Vocab& vocab);

}  // namespace pdn
