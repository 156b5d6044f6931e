// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// gating criterion fails. Dataset-dependent criteria skip with a message when
// the official files are not supplied (see README).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "pdn/batch.hpp"
#include "pdn/checkpoint.hpp"
#include "pdn/decay.hpp"
#include "pdn/gradcheck.hpp"
#include "pdn/position.hpp"
#include "pdn/synth.hpp"
#include "pdn/train.hpp"

#ifndef PDN_CLI_PATH
#error "PDN_CLI_PATH must point at the pdn binary"
#endif

using namespace pdn;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& reason) {
  std::printf("[SKIP] criterion %d: %s\n", criterion, reason.c_str());
  std::fflush(stdout);
}

void report_info(const std::string& detail) {
  std::printf("[INFO] %s\n", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const std::string cmd = std::string(PDN_CLI_PATH) + " " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Desk-scale configuration for the synthetic isolation experiment. All
// thresholds below are pinned here, not derived at run time.
TrainConfig synth_config(ModelKind kind) {
  TrainConfig c;
  c.model = kind;
  c.word_dim = 32;
  c.pos_dim = 8;
  c.hidden = 32;
  c.pan_hidden = 16;
  c.attn_hidden = 16;
  c.penultimate = 32;
  c.batch_size = 20;
  c.epochs = 30;
  c.lr = 0.001;
  c.dropout = 0.5;
  c.max_len = 24;
  c.seed = 20240817;
  c.decay = {DecayKind::kInverse, 1.1333};
  return c;
}

// ---- criterion 1 ----
void criterion_gradcheck() {
  const auto t0 = std::chrono::steady_clock::now();
  int runs = 0, passed = 0;
  for (const char* kind : {"inverse", "expo", "tangent"}) {
    for (int seed = 1; seed <= 20; ++seed) {
      ++runs;
      if (run_cli(fmt("gradcheck --seed %d --decay %s --n 6", seed, kind)) == 0) ++passed;
    }
  }
  const double elapsed = seconds_since(t0);
  report(1, passed == runs && elapsed < 120.0,
         fmt("cmd_gradcheck passed %d/%d runs (20 seeds x 3 decay kinds, tol 1e-4) in %.1fs (budget 120s)", passed,
             runs, elapsed));
}

// ---- criterion 2 ----
void criterion_positions() {
  Rng rng(424242);
  long mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = rng.uniform_int(1, 80);
    const int s = rng.uniform_int(1, len);
    const int e = rng.uniform_int(s, len);
    const std::vector<int> got = encode_positions(len, s, e);
    for (int i = 1; i <= len; ++i) {
      int nearest = len;
      for (int a = s; a <= e; ++a) nearest = std::min(nearest, std::abs(i - a));
      if (got[i - 1] != nearest + 1) ++mismatches;
    }
  }
  report(2, mismatches == 0, fmt("encode_positions vs brute-force oracle on 1000 random pairs: %ld mismatches",
                                 mismatches));
}

// ---- criterion 3 ----
void criterion_decay() {
  Rng rng(515151);
  bool ok = true;
  std::string why = "monotone on {1..80} for 100 random lambda per kind; exact identities hold";
  for (DecayKind kind : {DecayKind::kInverse, DecayKind::kExponential, DecayKind::kTangent}) {
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const DecaySpec spec{kind, rng.uniform(0.0, 2.0) + 1e-12};
      double prev = decay(spec, 1.0);
      for (int x = 2; x <= 80; ++x) {
        const double cur = decay(spec, x);
        if (!(cur < prev) || !(cur > 0.0)) {
          ok = false;
          why = fmt("%s decay with lambda=%.6f not strictly decreasing at x=%d", decay_kind_to_string(kind).c_str(),
                    spec.lambda, x);
          break;
        }
        prev = cur;
      }
    }
  }
  for (int x = 1; x <= 80 && ok; ++x) {
    if (decay({DecayKind::kExponential, 0.0}, x) != 1.0 || decay({DecayKind::kTangent, 0.0}, x) != 1.0) {
      ok = false;
      why = "lambda=0 did not return exactly 1";
    }
  }
  if (ok && decay({DecayKind::kInverse, 1.1333}, 1.0) != 1.1333) {
    ok = false;
    why = "inverse lambda=1.1333 at x=1 did not return 1.1333";
  }
  report(3, ok, why);
}

// ---- criteria 4, 5 and the attention proximity check ----
struct SynthOutcome {
  TrainResult pdn;
  std::vector<Example> test_set;
};

std::optional<SynthOutcome> criterion_synth_isolation() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng train_rng(derive_seed(20240817, 1));
  Rng test_rng(derive_seed(20240817, 2));  // seed-disjoint from the training draw
  const std::vector<Example> train_set = synth_generate(5000, train_rng);
  const std::vector<Example> test_set = synth_generate(1000, test_rng);

  // brute-force label oracle over the generated data
  long oracle_errors = 0;
  for (const Example& ex : test_set) {
    int good = 0, bad = 0;
    for (int i = 0; i < static_cast<int>(ex.tokens.size()); ++i) {
      if (ex.tokens[i] == kPositiveCue) good = i + 1;
      if (ex.tokens[i] == kNegativeCue) bad = i + 1;
    }
    const Polarity want =
        std::abs(good - ex.span_start) < std::abs(bad - ex.span_start) ? Polarity::kPositive : Polarity::kNegative;
    if (want != ex.label) ++oracle_errors;
  }

  TrainResult pdn = train(train_set, test_set, synth_config(ModelKind::kPdn));
  const double pdn_best = pdn.best_epoch().eval_accuracy;
  const TrainResult nbow = train(train_set, test_set, synth_config(ModelKind::kNbow));
  const double nbow_best = nbow.best_epoch().eval_accuracy;
  const TrainResult lstm = train(train_set, test_set, synth_config(ModelKind::kLstm));
  const double lstm_best = lstm.best_epoch().eval_accuracy;
  const double elapsed = seconds_since(t0);

  const bool pass = oracle_errors == 0 && pdn_best >= 0.95 && nbow_best <= 0.65 && lstm_best <= 0.75 &&
                    elapsed < 600.0;
  report(4, pass,
         fmt("synthetic isolation (5000/1000): Inverse-PDN best %.4f (need >= 0.95), NBOW best %.4f (need <= 0.65), "
             "aspect-blind LSTM best %.4f (need <= 0.75), label-oracle errors %ld, %.0fs (budget 600s)",
             pdn_best, nbow_best, lstm_best, oracle_errors, elapsed));
  if (!pass) return std::nullopt;
  return SynthOutcome{std::move(pdn), test_set};
}

void criterion_aspect_flip(SynthOutcome& outcome) {
  long pairs = 0, flipped = 0, right_direction = 0;
  for (const Example& ex : outcome.test_set) {
    const auto pair = make_flip_pair(ex);
    if (!pair) continue;
    ++pairs;
    const int near_pos =
        outcome.pdn.model.predict(encode_example(pair->near_positive, outcome.pdn.vocab, synth_config(ModelKind::kPdn).max_len));
    const int near_neg =
        outcome.pdn.model.predict(encode_example(pair->near_negative, outcome.pdn.vocab, synth_config(ModelKind::kPdn).max_len));
    if (near_pos != near_neg) ++flipped;
    if (near_pos == static_cast<int>(Polarity::kPositive) && near_neg == static_cast<int>(Polarity::kNegative))
      ++right_direction;
  }
  const double share = pairs ? static_cast<double>(flipped) / pairs : 0.0;
  report(5, pairs > 0 && share >= 0.90,
         fmt("aspect flip: argmax changed on %ld/%ld test sentences (%.1f%%, need >= 90%%; %ld fully directional)",
             flipped, pairs, 100.0 * share, right_direction));
}

// Reported, not gated: the proximity hypothesis (top effective weight lands
// on a near cue) was disconfirmed during validation. The trained attention is
// position-driven, so the span token at p=1 holds the largest alpha*d while
// cue polarity travels inside the recurrent state; the effective-weight mass
// still concentrates in the near range, which is what this reports.
void attention_proximity_check(SynthOutcome& outcome) {
  const DistanceProfile profile;
  long total = 0, near_cue_top = 0, near_top = 0;
  double near_mass = 0.0;
  for (const Example& ex : outcome.test_set) {
    const EncodedExample enc = encode_example(ex, outcome.pdn.vocab, synth_config(ModelKind::kPdn).max_len);
    ForwardTrace trace;
    outcome.pdn.model.predict_probs(enc, &trace);
    int best = 0;
    double mass = 0.0, total_mass = 0.0;
    for (int t = 0; t < static_cast<int>(trace.alpha.size()); ++t) {
      const double eff = trace.alpha[t] * trace.decay_weights[t];
      total_mass += eff;
      if (trace.positions[t] <= profile.near_max + 1) mass += eff;
      if (t > 0 && eff > trace.alpha[best] * trace.decay_weights[best]) best = t;
    }
    ++total;
    near_mass += mass / total_mass;
    const std::string& token = ex.tokens[best];
    if (trace.positions[best] <= profile.near_max + 1) {
      ++near_top;
      if (token == kPositiveCue || token == kNegativeCue) ++near_cue_top;
    }
  }
  report_info(fmt("attention proximity (non-gating): top effective weight in near range on %.1f%% of test examples "
                  "(a cue token itself on %.1f%%); %.1f%% of effective-weight mass sits in the near range",
                  100.0 * near_top / total, 100.0 * near_cue_top / total, 100.0 * near_mass / total));
}

// ---- criterion 9 ----
void criterion_determinism(const std::filesystem::path& dir) {
  const std::string data = (dir / "det.tsv").string();
  if (run_cli(fmt("synth --count 300 --seed 5 --out %s", data.c_str())) != 0) {
    report(9, false, "synth generation failed");
    return;
  }
  const std::string flags = fmt(
      "train --train %s --dev %s --seed 11 --epochs 3 --word-dim 16 --pos-dim 8 --hidden 16 --pan-hidden 8 "
      "--attn-hidden 8 --penultimate 12 --max-len 24",
      data.c_str(), data.c_str());
  const std::string out_a = (dir / "a.log").string(), out_b = (dir / "b.log").string();
  const std::string ckpt_a = (dir / "a.ckpt").string(), ckpt_b = (dir / "b.ckpt").string();
  const int rc_a = run_cli(flags + " --out " + ckpt_a, out_a);
  const int rc_b = run_cli(flags + " --out " + ckpt_b, out_b);
  const bool reports_equal = slurp(out_a) == slurp(out_b) && !slurp(out_a).empty();
  const bool ckpts_equal = slurp(ckpt_a) == slurp(ckpt_b) && !slurp(ckpt_a).empty();
  report(9, rc_a == 0 && rc_b == 0 && reports_equal && ckpts_equal,
         fmt("two identical cmd_train runs: epoch reports byte-identical=%s, checkpoints byte-identical=%s",
             reports_equal ? "yes" : "no", ckpts_equal ? "yes" : "no"));
}

// ---- criterion 10 ----
void criterion_checkpoint_roundtrip(SynthOutcome& outcome, const std::filesystem::path& dir) {
  const double before = evaluate(outcome.pdn.model, outcome.test_set, outcome.pdn.vocab);
  const std::string path = (dir / "roundtrip.ckpt").string();
  save_checkpoint(outcome.pdn.model, synth_config(ModelKind::kPdn), outcome.pdn.vocab, path);
  LoadedCheckpoint loaded = load_checkpoint(path);
  const double after = evaluate(loaded.model, outcome.test_set, loaded.vocab);
  report(10, std::memcmp(&before, &after, sizeof(double)) == 0,
         fmt("evaluate before %.6f vs after save+load %.6f (bit-exact comparison)", before, after));
}

// ---- criteria 6-8: official SemEval-2014 files, when supplied ----
struct Table2Counts {
  long positive, negative, neutral;
};

std::optional<std::string> find_file(const std::filesystem::path& dir, const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    const auto p = dir / name;
    if (std::filesystem::exists(p)) return p.string();
  }
  return std::nullopt;
}

Table2Counts count_labels(const std::vector<Example>& examples) {
  Table2Counts c{0, 0, 0};
  for (const Example& ex : examples) {
    if (ex.label == Polarity::kPositive) ++c.positive;
    if (ex.label == Polarity::kNegative) ++c.negative;
    if (ex.label == Polarity::kNeutral) ++c.neutral;
  }
  return c;
}

std::string counts_str(const Table2Counts& c) { return fmt("%ld/%ld/%ld", c.positive, c.negative, c.neutral); }

bool counts_equal(const Table2Counts& a, const Table2Counts& b) {
  return a.positive == b.positive && a.negative == b.negative && a.neutral == b.neutral;
}

void criteria_semeval() {
  const char* dir_env = std::getenv("PDN_SEMEVAL_DIR");
  if (!dir_env) {
    report_skip(6, "official SemEval-2014 files not supplied (set PDN_SEMEVAL_DIR to run)");
    report_skip(7, "requires the SemEval files from criterion 6");
    report_skip(8, "optional extended run needs PDN_SEMEVAL_DIR, PDN_EMBEDDINGS and PDN_RUN_EXTENDED=1");
    return;
  }
  const std::filesystem::path dir(dir_env);
  const auto rest_train = find_file(dir, {"Restaurants_Train_v2.xml", "Restaurants_Train.xml"});
  const auto rest_test = find_file(dir, {"Restaurants_Test_Gold.xml"});
  const auto lap_train = find_file(dir, {"Laptop_Train_v2.xml", "Laptops_Train_v2.xml", "Laptop_Train.xml",
                                         "Laptops_Train.xml"});
  const auto lap_test = find_file(dir, {"Laptops_Test_Gold.xml", "Laptop_Test_Gold.xml"});
  if (!rest_train || !rest_test || !lap_train || !lap_test) {
    report_skip(6, fmt("missing files under %s (need Restaurants/Laptops train + test gold XML)", dir_env));
    report_skip(7, "requires the SemEval files from criterion 6");
    report_skip(8, "requires the SemEval files from criterion 6");
    return;
  }

  const std::vector<Example> rest_train_ex = parse_semeval_xml(*rest_train);
  const std::vector<Example> rest_test_ex = parse_semeval_xml(*rest_test);
  const std::vector<Example> lap_train_ex = parse_semeval_xml(*lap_train);
  const std::vector<Example> lap_test_ex = parse_semeval_xml(*lap_test);

  const Table2Counts want_rt{2164, 805, 633}, want_rs{728, 196, 196};
  const Table2Counts want_lt{987, 866, 460}, want_ls{341, 128, 169};
  const Table2Counts got_rt = count_labels(rest_train_ex), got_rs = count_labels(rest_test_ex);
  const Table2Counts got_lt = count_labels(lap_train_ex), got_ls = count_labels(lap_test_ex);
  const bool counts_ok = counts_equal(got_rt, want_rt) && counts_equal(got_rs, want_rs) &&
                         counts_equal(got_lt, want_lt) && counts_equal(got_ls, want_ls);
  report(6, counts_ok,
         fmt("parsed counts (pos/neg/neu) restaurant train %s test %s, laptop train %s test %s",
             counts_str(got_rt).c_str(), counts_str(got_rs).c_str(), counts_str(got_lt).c_str(),
             counts_str(got_ls).c_str()));

  const double rest_majority = 100.0 * majority_baseline(rest_train_ex, rest_test_ex);
  const double lap_majority = 100.0 * majority_baseline(lap_train_ex, lap_test_ex);
  report(7, std::abs(rest_majority - 65.00) <= 0.01 && std::abs(lap_majority - 53.45) <= 0.01,
         fmt("majority baseline: restaurant %.2f (want 65.00 +/- 0.01), laptop %.2f (want 53.45 +/- 0.01)",
             rest_majority, lap_majority));

  const char* embeddings = std::getenv("PDN_EMBEDDINGS");
  const char* extended = std::getenv("PDN_RUN_EXTENDED");
  if (!embeddings || !extended || std::string(extended) != "1") {
    report_skip(8, "optional extended run disabled (set PDN_EMBEDDINGS and PDN_RUN_EXTENDED=1); non-gating");
    return;
  }
  // Non-gating by design: reproduction depends on tokenization and embedding
  // coverage choices the original experiments never pinned down.
  const auto t0 = std::chrono::steady_clock::now();
  auto run_one = [&](ModelKind kind, const std::vector<Example>& tr, const std::vector<Example>& te) {
    TrainConfig config;  // full-scale defaults
    config.model = kind;
    config.seed = 20240817;
    Vocab vocab = Vocab::build(tr);
    const EmbeddingLoad load = load_embeddings(embeddings, vocab, config.word_dim);
    const TrainResult result = train(tr, te, config, &vocab, &load.table);
    return 100.0 * result.best_epoch().eval_accuracy;
  };
  const double pdn_rest = run_one(ModelKind::kPdn, rest_train_ex, rest_test_ex);
  const double lstm_rest = run_one(ModelKind::kLstm, rest_train_ex, rest_test_ex);
  const double nbow_rest = run_one(ModelKind::kNbow, rest_train_ex, rest_test_ex);
  const double pdn_lap = run_one(ModelKind::kPdn, lap_train_ex, lap_test_ex);
  const double lstm_lap = run_one(ModelKind::kLstm, lap_train_ex, lap_test_ex);
  const double nbow_lap = run_one(ModelKind::kNbow, lap_train_ex, lap_test_ex);
  const bool in_band = std::abs(pdn_rest - 78.9) <= 2.5 && std::abs(pdn_lap - 70.69) <= 2.5;
  const bool ranked = pdn_rest > lstm_rest && pdn_rest > nbow_rest && pdn_lap > lstm_lap && pdn_lap > nbow_lap;
  report_info(fmt("criterion 8 (non-gating) extended run: Inverse-PDN restaurant %.2f (target 78.9 +/- 2.5) laptop "
                  "%.2f (target 70.69 +/- 2.5); LSTM %.2f/%.2f NBOW %.2f/%.2f; band %s, ordering %s; %.0fs",
                  pdn_rest, pdn_lap, lstm_rest, lstm_lap, nbow_rest, nbow_lap, in_band ? "ok" : "MISSED",
                  ranked ? "ok" : "MISSED", seconds_since(t0)));
}

}  // namespace

int main() {
  std::error_code ec;
  const std::filesystem::path scratch =
      std::filesystem::temp_directory_path() / ("pdn_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(scratch, ec);

  criterion_gradcheck();
  criterion_positions();
  criterion_decay();

  std::optional<SynthOutcome> outcome = criterion_synth_isolation();
  if (outcome) {
    criterion_aspect_flip(*outcome);
    attention_proximity_check(*outcome);
  } else {
    report(5, false, "skipped: criterion 4 training did not meet its thresholds");
  }

  criteria_semeval();
  criterion_determinism(scratch);
  if (outcome) {
    criterion_checkpoint_roundtrip(*outcome, scratch);
  } else {
    report(10, false, "skipped: criterion 4 training did not meet its thresholds");
  }

  std::filesystem::remove_all(scratch, ec);
  if (g_failures) {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all gating criteria passed\n");
  return 0;
}
