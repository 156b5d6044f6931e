// Command-line front end: train, eval, predict, gradcheck, synth.
//
// Exit codes: 0 success, 1 usage error, 2 data/file error, 3 numeric failure
// (non-finite loss or a failed gradient check).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdn/batch.hpp"
#include "pdn/checkpoint.hpp"
#include "pdn/errors.hpp"
#include "pdn/gradcheck.hpp"
#include "pdn/synth.hpp"
#include "pdn/tokenize.hpp"
#include "pdn/train.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PDN_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw pdn::DataError(std::string("PDN_SEED is not a number: '") + env + "'");
    }
  }
  return 42;
}

std::vector<pdn::Example> load_examples(const std::string& path, const std::string& format) {
  std::string kind = format;
  if (kind == "auto") {
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".xml")
      kind = "xml";
    else if (ext == ".tsv")
      kind = "tsv";
    else
      throw pdn::DataError("cannot infer format of '" + path + "' (use --format xml|tsv)");
  }
  return kind == "xml" ? pdn::parse_semeval_xml(path) : pdn::parse_tsv(path);
}

struct TrainArgs {
  std::string train_path, dev_path, embeddings_path, out_path;
  std::string format = "auto";
  std::string model = "pdn";
  std::string decay = "inverse";
  double lambda = 1.1333;
  pdn::TrainConfig config;
};

void add_config_flags(CLI::App& cmd, TrainArgs& args) {
  cmd.add_option("--model", args.model, "Model: pdn|nbow|lstm")->capture_default_str();
  cmd.add_option("--decay", args.decay, "Decay kind: inverse|expo|tangent")->capture_default_str();
  cmd.add_option("--lambda", args.lambda, "Decay constant (1.1333 inverse, 0.3 expo, 0.45 tangent)")
      ->capture_default_str();
  cmd.add_option("--epochs", args.config.epochs, "Training epochs")->capture_default_str();
  cmd.add_option("--batch-size", args.config.batch_size, "Batch size")->capture_default_str();
  cmd.add_option("--lr", args.config.lr, "Adam initial learning rate")->capture_default_str();
  cmd.add_option("--dropout", args.config.dropout, "Dropout on the penultimate layer")->capture_default_str();
  cmd.add_option("--word-dim", args.config.word_dim, "Word embedding dimension")->capture_default_str();
  cmd.add_option("--pos-dim", args.config.pos_dim, "Position embedding dimension")->capture_default_str();
  cmd.add_option("--hidden", args.config.hidden, "LSTM hidden units")->capture_default_str();
  cmd.add_option("--pan-hidden", args.config.pan_hidden, "Units in each attention projection layer")
      ->capture_default_str();
  cmd.add_option("--attn-hidden", args.config.attn_hidden, "Units in the joint attention layer")
      ->capture_default_str();
  cmd.add_option("--penultimate", args.config.penultimate, "Units in the penultimate layer")->capture_default_str();
  cmd.add_option("--max-len", args.config.max_len, "Maximum sentence length n")->capture_default_str();
  cmd.add_flag("--freeze-embeddings", args.config.freeze_embeddings, "Do not update word embeddings");
}

int cmd_train(const TrainArgs& args, std::uint64_t seed) {
  pdn::TrainConfig config = args.config;
  config.seed = seed;
  config.model = pdn::model_kind_from_string(args.model);
  config.decay.kind = pdn::decay_kind_from_string(args.decay);
  config.decay.lambda = args.lambda;
  config.validate();

  const std::vector<pdn::Example> train_set = load_examples(args.train_path, args.format);
  std::vector<pdn::Example> dev_set;
  if (!args.dev_path.empty()) dev_set = load_examples(args.dev_path, args.format);

  std::cerr << "training " << args.model << " on " << train_set.size() << " examples, seed " << seed << "\n";
  pdn::Vocab vocab = pdn::Vocab::build(train_set);
  std::optional<pdn::Tensor> pretrained;
  if (!args.embeddings_path.empty()) {
    const pdn::EmbeddingLoad load = pdn::load_embeddings(args.embeddings_path, vocab, config.word_dim);
    std::cerr << "embeddings: " << load.loaded << " rows loaded, " << load.oov << " vocabulary tokens missing\n";
    pretrained = load.table;
  }

  const pdn::TrainResult result =
      pdn::train(train_set, dev_set, config, &vocab, pretrained ? &*pretrained : nullptr, nullptr,
                 [](const pdn::EpochReport& r) {
                   std::cout << pdn::epoch_report_line(r) << "\n" << std::flush;
                   std::cerr << "epoch " << r.epoch << " took " << r.wall_seconds << "s\n";
                 });

  if (!dev_set.empty()) {
    const pdn::EpochReport& best = result.best_epoch();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "final_eval_acc=%.4f best_eval_acc=%.4f best_epoch=%d",
                  result.reports.back().eval_accuracy, best.eval_accuracy, best.epoch);
    std::cout << buf << "\n";
  }
  if (!args.out_path.empty()) {
    pdn::save_checkpoint(result.model, config, result.vocab, args.out_path);
    std::cerr << "checkpoint written to " << args.out_path << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& ckpt_path, const std::string& test_path, const std::string& format) {
  pdn::LoadedCheckpoint loaded = pdn::load_checkpoint(ckpt_path);
  const std::vector<pdn::Example> test_set = load_examples(test_path, format);
  const double acc = pdn::evaluate(loaded.model, test_set, loaded.vocab);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", acc);
  std::cout << "accuracy=" << buf << "\n";
  return 0;
}

int cmd_predict(const std::string& ckpt_path, const std::string& sentence, const std::string& aspect,
                bool dump_attention) {
  pdn::LoadedCheckpoint loaded = pdn::load_checkpoint(ckpt_path);

  pdn::Example ex;
  ex.tokens = pdn::tokenize(sentence);
  if (ex.tokens.empty()) throw pdn::DataError("empty sentence");
  const std::vector<std::string> phrase = pdn::tokenize(aspect);
  bool found = false;
  for (std::size_t i = 0; !found && i + phrase.size() <= ex.tokens.size(); ++i) {
    bool hit = !phrase.empty();
    for (std::size_t j = 0; j < phrase.size(); ++j)
      if (ex.tokens[i + j] != phrase[j]) {
        hit = false;
        break;
      }
    if (hit) {
      ex.span_start = static_cast<int>(i) + 1;
      ex.span_end = static_cast<int>(i + phrase.size());
      found = true;
    }
  }
  if (!found) throw pdn::DataError("aspect '" + aspect + "' not found in sentence");

  const pdn::EncodedExample enc = pdn::encode_example(ex, loaded.vocab, loaded.model.dims().max_len);
  pdn::ForwardTrace trace;
  loaded.model.predict_probs(enc, &trace);
  std::cout << "label=" << pdn::polarity_to_string(static_cast<pdn::Polarity>(trace.predicted));
  char buf[32];
  std::cout << " probs=";
  for (std::size_t c = 0; c < trace.probs.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%.6f", trace.probs[c]);
    std::cout << (c ? "," : "") << buf;
  }
  std::cout << "\n";
  if (dump_attention) std::cout << pdn::attention_dump(loaded.model, ex, loaded.vocab);
  return 0;
}

int cmd_gradcheck(std::uint64_t seed, int n, const std::string& decay, double lambda, bool break_decay) {
  const pdn::GradCheckReport report = pdn::run_model_gradcheck(
      pdn::ModelKind::kPdn, pdn::decay_kind_from_string(decay), seed, n, break_decay, lambda);
  for (const pdn::GradCheckEntry& e : report.entries) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", e.max_rel_err);
    std::cout << "tensor=" << e.name << " max_rel_err=" << buf << " status="
              << (e.max_rel_err < 1e-4 ? "ok" : "FAIL") << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", report.worst);
  std::cout << "worst=" << buf << " tolerance=1.000e-04 result=" << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? 0 : kExitNumeric;
}

int cmd_synth(int count, std::uint64_t seed, const std::string& out_path) {
  pdn::Rng rng(seed);
  pdn::write_tsv(pdn::synth_generate(count, rng), out_path);
  std::cerr << count << " examples written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position-aware decay weighted network for aspect-term sentiment analysis"};
  app.require_subcommand(1);

  TrainArgs train_args;
  std::uint64_t seed = 0;
  bool seed_given = false;

  CLI::App* train = app.add_subcommand("train", "Train a model and optionally write a checkpoint");
  train->add_option("--train", train_args.train_path, "Training data (.xml or .tsv)")->required();
  train->add_option("--dev", train_args.dev_path, "Held-out data evaluated each epoch");
  train->add_option("--embeddings", train_args.embeddings_path, "Pretrained word embedding text file");
  train->add_option("--out", train_args.out_path, "Checkpoint output path");
  train->add_option("--format", train_args.format, "Input format: auto|xml|tsv")->capture_default_str();
  add_config_flags(*train, train_args);
  train->add_option("--seed", seed, "Master seed (env PDN_SEED, else 42)")->each([&](const std::string&) {
    seed_given = true;
  });

  std::string ckpt_path, test_path, sentence, aspect;
  std::string eval_format = "auto";
  bool dump_attention = false;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a checkpoint on a labeled file");
  eval->add_option("--ckpt", ckpt_path, "Checkpoint path")->required();
  eval->add_option("--test", test_path, "Labeled data (.xml or .tsv)")->required();
  eval->add_option("--format", eval_format, "Input format: auto|xml|tsv")->capture_default_str();

  CLI::App* predict = app.add_subcommand("predict", "Classify one sentence/aspect pair");
  predict->add_option("--ckpt", ckpt_path, "Checkpoint path")->required();
  predict->add_option("--sentence", sentence, "Input sentence")->required();
  predict->add_option("--aspect", aspect, "Aspect term contained in the sentence")->required();
  predict->add_flag("--dump-attention", dump_attention, "Append the per-token attention report");

  int gc_n = 6;
  std::string gc_decay = "inverse";
  double gc_lambda = -1.0;
  bool gc_break = false;
  CLI::App* gradcheck = app.add_subcommand("gradcheck", "Compare tape gradients against finite differences");
  gradcheck->add_option("--seed", seed, "Master seed (env PDN_SEED, else 42)")->each([&](const std::string&) {
    seed_given = true;
  });
  gradcheck->add_option("--n", gc_n, "Sentence length of the probe example")->capture_default_str();
  gradcheck->add_option("--decay", gc_decay, "Decay kind: inverse|expo|tangent")->capture_default_str();
  gradcheck->add_option("--lambda", gc_lambda, "Decay constant (random in (0.2,1.5] when unset)");
  gradcheck->add_flag("--break-decay-gradient", gc_break,
                      "Deliberately corrupt the decay gradient (negative control)");

  int synth_count = 1000;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic position-sensitive dataset");
  synth->add_option("--count", synth_count, "Number of examples")->capture_default_str();
  synth->add_option("--seed", seed, "Master seed (env PDN_SEED, else 42)")->each([&](const std::string&) {
    seed_given = true;
  });
  synth->add_option("--out", synth_out, "Output TSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (train->parsed()) return cmd_train(train_args, seed);
    if (eval->parsed()) return cmd_eval(ckpt_path, test_path, eval_format);
    if (predict->parsed()) return cmd_predict(ckpt_path, sentence, aspect, dump_attention);
    if (gradcheck->parsed()) return cmd_gradcheck(seed, gc_n, gc_decay, gc_lambda, gc_break);
    if (synth->parsed()) return cmd_synth(synth_count, seed, synth_out);
  } catch (const pdn::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const pdn::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
