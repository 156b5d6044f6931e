#pragma once

#include <cstdint>
#include <vector>

#include "pdn/params.hpp"
#include "pdn/rng.hpp"
#include "pdn/tensor.hpp"

namespace pdn {

inline constexpr double kSeluAlpha = 1.6732632423543772;
inline constexpr double kSeluScale = 1.0507009873554805;

/// Additive floor inside the log of the cross-entropy loss.
inline constexpr double kLossEpsilon = 1e-12;

/// Handle to a node on a Tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

/// Reverse-mode gradient tape. Operations execute eagerly and are recorded in
/// order; backward() replays them in exact reverse order, accumulating
/// gradients additively (a value consumed k times receives k contributions).
///
/// Leaves come in three flavors: constant (no gradient), input (gradient kept
/// on the tape, for tests), and param (gradient flushed into the bound
/// Param::grad, which persists across tapes until zeroed).
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // ---- leaves ----
  Var constant(Tensor t);
  Var input(Tensor t);
  Var param(Param& p);
  /// Gather rows of a table parameter; gradient scatters into table.grad rows
  /// so the full table never materializes a dense gradient on the tape.
  Var lookup_row(Param& table, int row);
  /// Order-canonical bag of rows: sum of count[i] * table.row(ids[i]) with ids
  /// strictly ascending. Summation order is independent of token order.
  Var lookup_bag(Param& table, const std::vector<int>& sorted_ids, const std::vector<int>& counts);

  // ---- ops ----
  Var affine(Var w, Var x, Var b);  // w[out,in] * x[in] + b[out]
  Var matvec(Var w, Var x);         // w[out,in] * x[in]
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);  // elementwise
  Var scale(Var a, double c);
  Var slice(Var a, int offset, int len);
  Var concat(Var a, Var b);
  Var sigmoid(Var a);
  Var tanh_act(Var a);
  Var relu(Var a);
  Var selu(Var a);
  Var dot(Var a, Var b);  // scalar
  Var sum(Var a);         // scalar
  Var stack_scalars(const std::vector<Var>& xs);
  /// Softmax over positions with mask[i] == 1; masked-out outputs are exactly
  /// zero. Stabilized by subtracting the max masked-in logit.
  Var masked_softmax(Var logits, const std::vector<std::uint8_t>& mask);
  Var softmax(Var logits);
  /// Inverted dropout: training mode zeroes elements with probability p and
  /// scales survivors by 1/(1-p); inference mode is the identity.
  Var dropout(Var a, double p, bool training, Rng& rng);
  /// -ln(probs[label] + eps). probs must be nonnegative and sum to 1 (1e-5).
  Var cross_entropy(Var probs, int label);
  /// sum_t weights[t] * decays[t] * vecs[t]. The decay factors are constants:
  /// no gradient flows through them. break_decay_gradient deliberately drops
  /// the decay factor from the vec gradient path (negative control for the
  /// gradient checker).
  Var decay_weighted_sum(const std::vector<Var>& vecs, Var weights, const std::vector<double>& decays,
                         bool break_decay_gradient = false);

  /// Reverse sweep from a scalar loss; seeds d(loss)/d(loss) = seed. A tape
  /// can be consumed once; reset() clears it for reuse.
  void backward(Var loss, double seed = 1.0);

  const Tensor& value(Var x) const;
  /// Gradient of the last backward() target w.r.t. x (zeros if unreached).
  Tensor grad(Var x) const;

  std::size_t node_count() const { return nodes_.size(); }
  bool consumed() const { return consumed_; }
  void reset();

 private:
  enum class Op : std::uint8_t {
    kConst, kInput, kParam, kLookupRow, kLookupBag,
    kAffine, kMatvec, kAdd, kSub, kMul, kScale, kSlice, kConcat,
    kSigmoid, kTanh, kRelu, kSelu, kDot, kSum, kStack,
    kMaskedSoftmax, kDropout, kCrossEntropy, kDecaySum,
  };

  struct Node {
    Op op;
    int a = -1, b = -1, c = -1;
    Tensor val;
    Tensor grad;  // allocated on demand during backward
    bool needs_grad = false;
    Param* bound = nullptr;
    std::vector<int> extra;        // stack/decay-sum inputs, bag ids/counts
    std::vector<double> aux;       // dropout multipliers, decay constants
    std::vector<std::uint8_t> mask;
    double x0 = 0.0;
    int i0 = 0, i1 = 0;
    bool flag = false;
  };

  int push(Node n);
  Node& at(Var x);
  const Node& at(Var x) const;
  Tensor& ensure_grad(int id);
  void add_into_grad(int id, const double* src, int n);
  void step_backward(Node& n);

  std::vector<Node> nodes_;
  bool consumed_ = false;
};

}  // namespace pdn
