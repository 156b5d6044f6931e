#include "pdn/autograd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pdn/errors.hpp"

namespace pdn {

namespace {

void check_vector(const Tensor& t, const char* what) {
  if (t.rank() != 1) throw std::invalid_argument(std::string(what) + ": expected rank-1, got " + dims_to_string(t.dims));
}

}  // namespace

int Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

Tape::Node& Tape::at(Var x) {
  if (!x.valid() || x.id >= static_cast<int>(nodes_.size())) throw std::logic_error("tape: invalid var");
  return nodes_[x.id];
}

const Tape::Node& Tape::at(Var x) const {
  if (!x.valid() || x.id >= static_cast<int>(nodes_.size())) throw std::logic_error("tape: invalid var");
  return nodes_[x.id];
}

const Tensor& Tape::value(Var x) const { return at(x).val; }

Tensor Tape::grad(Var x) const {
  const Node& n = at(x);
  if (n.grad.size() == 0) return Tensor::zeros(n.val.dims);
  return n.grad;
}

void Tape::reset() {
  nodes_.clear();
  consumed_ = false;
}

Tensor& Tape::ensure_grad(int id) {
  Node& n = nodes_[id];
  if (n.grad.size() == 0) n.grad = Tensor::zeros(n.val.dims);
  return n.grad;
}

void Tape::add_into_grad(int id, const double* src, int count) {
  Tensor& g = ensure_grad(id);
  for (int i = 0; i < count; ++i) g.v[i] += src[i];
}

// ---- leaves ----

Var Tape::constant(Tensor t) {
  Node n;
  n.op = Op::kConst;
  n.val = std::move(t);
  n.needs_grad = false;
  return {push(std::move(n))};
}

Var Tape::input(Tensor t) {
  Node n;
  n.op = Op::kInput;
  n.val = std::move(t);
  n.needs_grad = true;
  return {push(std::move(n))};
}

Var Tape::param(Param& p) {
  Node n;
  n.op = Op::kParam;
  n.val = p.value;
  n.needs_grad = true;
  n.bound = &p;
  return {push(std::move(n))};
}

Var Tape::lookup_row(Param& table, int row) {
  if (table.value.rank() != 2) throw std::invalid_argument("lookup_row: table must be rank-2");
  if (row < 0 || row >= table.value.rows())
    throw std::out_of_range("lookup_row: row " + std::to_string(row) + " out of " + std::to_string(table.value.rows()));
  Node n;
  n.op = Op::kLookupRow;
  n.bound = &table;
  n.i0 = row;
  n.needs_grad = true;
  const int c = table.value.cols();
  n.val = Tensor({c});
  std::copy_n(table.value.row(row), c, n.val.v.begin());
  return {push(std::move(n))};
}

Var Tape::lookup_bag(Param& table, const std::vector<int>& sorted_ids, const std::vector<int>& counts) {
  if (table.value.rank() != 2) throw std::invalid_argument("lookup_bag: table must be rank-2");
  if (sorted_ids.size() != counts.size()) throw std::invalid_argument("lookup_bag: ids/counts size mismatch");
  Node n;
  n.op = Op::kLookupBag;
  n.bound = &table;
  n.needs_grad = true;
  const int c = table.value.cols();
  n.val = Tensor({c});
  for (std::size_t k = 0; k < sorted_ids.size(); ++k) {
    const int id = sorted_ids[k];
    if (k > 0 && sorted_ids[k - 1] >= id) throw std::invalid_argument("lookup_bag: ids must be strictly ascending");
    if (id < 0 || id >= table.value.rows()) throw std::out_of_range("lookup_bag: row out of range");
    const double* r = table.value.row(id);
    const double cnt = counts[k];
    for (int i = 0; i < c; ++i) n.val.v[i] += cnt * r[i];
    n.extra.push_back(id);
    n.extra.push_back(counts[k]);
  }
  return {push(std::move(n))};
}

// ---- ops ----

Var Tape::affine(Var w, Var x, Var b) {
  const Tensor& wt = at(w).val;
  const Tensor& xt = at(x).val;
  const Tensor& bt = at(b).val;
  if (wt.rank() != 2 || xt.rank() != 1 || bt.rank() != 1 || wt.cols() != xt.size() || wt.rows() != bt.size())
    throw std::invalid_argument("affine: dimension mismatch W=" + dims_to_string(wt.dims) + " x=" +
                                dims_to_string(xt.dims) + " b=" + dims_to_string(bt.dims));
  Node n;
  n.op = Op::kAffine;
  n.a = w.id;
  n.b = x.id;
  n.c = b.id;
  n.needs_grad = at(w).needs_grad || at(x).needs_grad || at(b).needs_grad;
  const int out = wt.rows(), in = wt.cols();
  n.val = Tensor({out});
  for (int r = 0; r < out; ++r) {
    const double* wr = wt.row(r);
    double acc = bt.v[r];
    for (int i = 0; i < in; ++i) acc += wr[i] * xt.v[i];
    n.val.v[r] = acc;
  }
  return {push(std::move(n))};
}

Var Tape::matvec(Var w, Var x) {
  const Tensor& wt = at(w).val;
  const Tensor& xt = at(x).val;
  if (wt.rank() != 2 || xt.rank() != 1 || wt.cols() != xt.size())
    throw std::invalid_argument("matvec: dimension mismatch W=" + dims_to_string(wt.dims) + " x=" +
                                dims_to_string(xt.dims));
  Node n;
  n.op = Op::kMatvec;
  n.a = w.id;
  n.b = x.id;
  n.needs_grad = at(w).needs_grad || at(x).needs_grad;
  const int out = wt.rows(), in = wt.cols();
  n.val = Tensor({out});
  for (int r = 0; r < out; ++r) {
    const double* wr = wt.row(r);
    double acc = 0.0;
    for (int i = 0; i < in; ++i) acc += wr[i] * xt.v[i];
    n.val.v[r] = acc;
  }
  return {push(std::move(n))};
}

Var Tape::add(Var a, Var b) {
  const Tensor& ta = at(a).val;
  const Tensor& tb = at(b).val;
  check_same_dims(ta, tb, "add");
  Node n;
  n.op = Op::kAdd;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = at(a).needs_grad || at(b).needs_grad;
  n.val = ta;
  for (int i = 0; i < n.val.size(); ++i) n.val.v[i] += tb.v[i];
  return {push(std::move(n))};
}

Var Tape::sub(Var a, Var b) {
  const Tensor& ta = at(a).val;
  const Tensor& tb = at(b).val;
  check_same_dims(ta, tb, "sub");
  Node n;
  n.op = Op::kSub;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = at(a).needs_grad || at(b).needs_grad;
  n.val = ta;
  for (int i = 0; i < n.val.size(); ++i) n.val.v[i] -= tb.v[i];
  return {push(std::move(n))};
}

Var Tape::mul(Var a, Var b) {
  const Tensor& ta = at(a).val;
  const Tensor& tb = at(b).val;
  check_same_dims(ta, tb, "mul");
  Node n;
  n.op = Op::kMul;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = at(a).needs_grad || at(b).needs_grad;
  n.val = ta;
  for (int i = 0; i < n.val.size(); ++i) n.val.v[i] *= tb.v[i];
  return {push(std::move(n))};
}

Var Tape::scale(Var a, double c) {
  Node n;
  n.op = Op::kScale;
  n.a = a.id;
  n.x0 = c;
  n.needs_grad = at(a).needs_grad;
  n.val = at(a).val;
  for (double& x : n.val.v) x *= c;
  return {push(std::move(n))};
}

Var Tape::slice(Var a, int offset, int len) {
  const Tensor& ta = at(a).val;
  if (offset < 0 || len <= 0 || offset + len > ta.size())
    throw std::out_of_range("slice: [" + std::to_string(offset) + "," + std::to_string(offset + len) + ") of " +
                            std::to_string(ta.size()));
  Node n;
  n.op = Op::kSlice;
  n.a = a.id;
  n.i0 = offset;
  n.i1 = len;
  n.needs_grad = at(a).needs_grad;
  n.val = Tensor({len});
  std::copy_n(ta.v.begin() + offset, len, n.val.v.begin());
  return {push(std::move(n))};
}

Var Tape::concat(Var a, Var b) {
  const Tensor& ta = at(a).val;
  const Tensor& tb = at(b).val;
  check_vector(ta, "concat");
  check_vector(tb, "concat");
  Node n;
  n.op = Op::kConcat;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = at(a).needs_grad || at(b).needs_grad;
  n.val = Tensor({ta.size() + tb.size()});
  std::copy(ta.v.begin(), ta.v.end(), n.val.v.begin());
  std::copy(tb.v.begin(), tb.v.end(), n.val.v.begin() + ta.size());
  return {push(std::move(n))};
}

Var Tape::sigmoid(Var a) {
  Node n;
  n.op = Op::kSigmoid;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  n.val = at(a).val;
  for (double& x : n.val.v) x = 1.0 / (1.0 + std::exp(-x));
  return {push(std::move(n))};
}

Var Tape::tanh_act(Var a) {
  Node n;
  n.op = Op::kTanh;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  n.val = at(a).val;
  for (double& x : n.val.v) x = std::tanh(x);
  return {push(std::move(n))};
}

Var Tape::relu(Var a) {
  Node n;
  n.op = Op::kRelu;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  n.val = at(a).val;
  for (double& x : n.val.v) x = x > 0.0 ? x : 0.0;
  return {push(std::move(n))};
}

Var Tape::selu(Var a) {
  Node n;
  n.op = Op::kSelu;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  n.val = at(a).val;
  for (double& x : n.val.v) x = x > 0.0 ? kSeluScale * x : kSeluScale * kSeluAlpha * (std::exp(x) - 1.0);
  return {push(std::move(n))};
}

Var Tape::dot(Var a, Var b) {
  const Tensor& ta = at(a).val;
  const Tensor& tb = at(b).val;
  check_same_dims(ta, tb, "dot");
  Node n;
  n.op = Op::kDot;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = at(a).needs_grad || at(b).needs_grad;
  double acc = 0.0;
  for (int i = 0; i < ta.size(); ++i) acc += ta.v[i] * tb.v[i];
  n.val = Tensor::scalar(acc);
  return {push(std::move(n))};
}

Var Tape::sum(Var a) {
  Node n;
  n.op = Op::kSum;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  double acc = 0.0;
  for (double x : at(a).val.v) acc += x;
  n.val = Tensor::scalar(acc);
  return {push(std::move(n))};
}

Var Tape::stack_scalars(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("stack_scalars: empty");
  Node n;
  n.op = Op::kStack;
  n.val = Tensor({static_cast<int>(xs.size())});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Node& src = at(xs[i]);
    if (src.val.size() != 1) throw std::invalid_argument("stack_scalars: non-scalar input");
    n.val.v[i] = src.val.v[0];
    n.needs_grad = n.needs_grad || src.needs_grad;
    n.extra.push_back(xs[i].id);
  }
  return {push(std::move(n))};
}

Var Tape::masked_softmax(Var logits, const std::vector<std::uint8_t>& mask) {
  const Tensor& lt = at(logits).val;
  check_vector(lt, "masked_softmax");
  if (static_cast<int>(mask.size()) != lt.size()) throw std::invalid_argument("masked_softmax: mask size mismatch");
  bool any_supported = false;
  double max_in = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < lt.size(); ++i) {
    if (mask[i]) {
      any_supported = true;
      max_in = std::max(max_in, lt.v[i]);
    }
  }
  if (!any_supported) throw std::runtime_error("masked_softmax: empty attention support");
  if (!std::isfinite(max_in)) throw NumericError("masked_softmax: non-finite logits");
  Node n;
  n.op = Op::kMaskedSoftmax;
  n.a = logits.id;
  n.mask = mask;
  n.needs_grad = at(logits).needs_grad;
  n.val = Tensor({lt.size()});
  double z = 0.0;
  for (int i = 0; i < lt.size(); ++i) {
    if (mask[i]) {
      n.val.v[i] = std::exp(lt.v[i] - max_in);
      z += n.val.v[i];
    }
  }
  for (int i = 0; i < lt.size(); ++i)
    if (mask[i]) n.val.v[i] /= z;
  return {push(std::move(n))};
}

Var Tape::softmax(Var logits) {
  return masked_softmax(logits, std::vector<std::uint8_t>(at(logits).val.size(), 1));
}

Var Tape::dropout(Var a, double p, bool training, Rng& rng) {
  if (p < 0.0 || p >= 1.0) throw std::invalid_argument("dropout: p must be in [0,1), got " + std::to_string(p));
  if (!training || p == 0.0) return a;  // identity, no rng draws
  Node n;
  n.op = Op::kDropout;
  n.a = a.id;
  n.needs_grad = at(a).needs_grad;
  const Tensor& ta = at(a).val;
  n.val = Tensor(ta.dims);
  n.aux.resize(ta.size());
  const double keep_scale = 1.0 / (1.0 - p);
  for (int i = 0; i < ta.size(); ++i) {
    n.aux[i] = rng.uniform() < p ? 0.0 : keep_scale;
    n.val.v[i] = ta.v[i] * n.aux[i];
  }
  return {push(std::move(n))};
}

Var Tape::cross_entropy(Var probs, int label) {
  const Tensor& pt = at(probs).val;
  check_vector(pt, "cross_entropy");
  if (label < 0 || label >= pt.size())
    throw std::out_of_range("cross_entropy: label " + std::to_string(label) + " out of " + std::to_string(pt.size()));
  double total = 0.0;
  for (double x : pt.v) {
    if (x < -1e-9) throw std::invalid_argument("cross_entropy: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-5)
    throw std::invalid_argument("cross_entropy: probabilities sum to " + std::to_string(total));
  Node n;
  n.op = Op::kCrossEntropy;
  n.a = probs.id;
  n.i0 = label;
  n.needs_grad = at(probs).needs_grad;
  n.val = Tensor::scalar(-std::log(pt.v[label] + kLossEpsilon));
  return {push(std::move(n))};
}

Var Tape::decay_weighted_sum(const std::vector<Var>& vecs, Var weights, const std::vector<double>& decays,
                             bool break_decay_gradient) {
  if (vecs.empty()) throw std::invalid_argument("decay_weighted_sum: empty");
  const Tensor& wt = at(weights).val;
  if (wt.size() != static_cast<int>(vecs.size()) || decays.size() != vecs.size())
    throw std::invalid_argument("decay_weighted_sum: length mismatch");
  Node n;
  n.op = Op::kDecaySum;
  n.b = weights.id;
  n.aux = decays;
  n.flag = break_decay_gradient;
  n.needs_grad = at(weights).needs_grad;
  const int d = at(vecs[0]).val.size();
  n.val = Tensor({d});
  for (std::size_t t = 0; t < vecs.size(); ++t) {
    const Node& src = at(vecs[t]);
    if (src.val.size() != d) throw std::invalid_argument("decay_weighted_sum: inconsistent vector sizes");
    n.needs_grad = n.needs_grad || src.needs_grad;
    const double c = wt.v[t] * decays[t];
    for (int i = 0; i < d; ++i) n.val.v[i] += c * src.val.v[i];
    n.extra.push_back(vecs[t].id);
  }
  return {push(std::move(n))};
}

// ---- backward ----

void Tape::backward(Var loss, double seed) {
  if (consumed_) throw std::logic_error("tape: backward called twice (tape already consumed)");
  consumed_ = true;
  const Node& top = at(loss);
  if (top.val.size() != 1) throw std::invalid_argument("backward: loss must be scalar");
  ensure_grad(loss.id).v[0] = seed;
  for (int i = loss.id; i >= 0; --i) {
    Node& n = nodes_[i];
    if (!n.needs_grad || n.grad.size() == 0) continue;
    step_backward(n);
  }
}

void Tape::step_backward(Node& n) {
  const double* g = n.grad.v.data();
  const int gs = n.grad.size();
  switch (n.op) {
    case Op::kConst:
    case Op::kInput:
      break;
    case Op::kParam: {
      Tensor& pg = n.bound->grad;
      for (int i = 0; i < gs; ++i) pg.v[i] += g[i];
      break;
    }
    case Op::kLookupRow: {
      double* r = n.bound->grad.row(n.i0);
      for (int i = 0; i < gs; ++i) r[i] += g[i];
      break;
    }
    case Op::kLookupBag: {
      for (std::size_t k = 0; k < n.extra.size(); k += 2) {
        double* r = n.bound->grad.row(n.extra[k]);
        const double cnt = n.extra[k + 1];
        for (int i = 0; i < gs; ++i) r[i] += cnt * g[i];
      }
      break;
    }
    case Op::kAffine:
    case Op::kMatvec: {
      Node& wn = nodes_[n.a];
      Node& xn = nodes_[n.b];
      const int out = wn.val.rows(), in = wn.val.cols();
      if (wn.needs_grad) {
        Tensor& wg = ensure_grad(n.a);
        for (int r = 0; r < out; ++r) {
          const double gr = g[r];
          if (gr == 0.0) continue;
          double* wgr = wg.row(r);
          const double* x = xn.val.v.data();
          for (int i = 0; i < in; ++i) wgr[i] += gr * x[i];
        }
      }
      if (xn.needs_grad) {
        Tensor& xg = ensure_grad(n.b);
        for (int r = 0; r < out; ++r) {
          const double gr = g[r];
          if (gr == 0.0) continue;
          const double* wr = wn.val.row(r);
          for (int i = 0; i < in; ++i) xg.v[i] += gr * wr[i];
        }
      }
      if (n.op == Op::kAffine && nodes_[n.c].needs_grad) add_into_grad(n.c, g, gs);
      break;
    }
    case Op::kAdd: {
      if (nodes_[n.a].needs_grad) add_into_grad(n.a, g, gs);
      if (nodes_[n.b].needs_grad) add_into_grad(n.b, g, gs);
      break;
    }
    case Op::kSub: {
      if (nodes_[n.a].needs_grad) add_into_grad(n.a, g, gs);
      if (nodes_[n.b].needs_grad) {
        Tensor& bg = ensure_grad(n.b);
        for (int i = 0; i < gs; ++i) bg.v[i] -= g[i];
      }
      break;
    }
    case Op::kMul: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const Tensor& bv = nodes_[n.b].val;
        for (int i = 0; i < gs; ++i) ag.v[i] += g[i] * bv.v[i];
      }
      if (nodes_[n.b].needs_grad) {
        Tensor& bg = ensure_grad(n.b);
        const Tensor& av = nodes_[n.a].val;
        for (int i = 0; i < gs; ++i) bg.v[i] += g[i] * av.v[i];
      }
      break;
    }
    case Op::kScale: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        for (int i = 0; i < gs; ++i) ag.v[i] += n.x0 * g[i];
      }
      break;
    }
    case Op::kSlice: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        for (int i = 0; i < n.i1; ++i) ag.v[n.i0 + i] += g[i];
      }
      break;
    }
    case Op::kConcat: {
      const int na = nodes_[n.a].val.size();
      if (nodes_[n.a].needs_grad) add_into_grad(n.a, g, na);
      if (nodes_[n.b].needs_grad) {
        Tensor& bg = ensure_grad(n.b);
        for (int i = 0; i < gs - na; ++i) bg.v[i] += g[na + i];
      }
      break;
    }
    case Op::kSigmoid: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        for (int i = 0; i < gs; ++i) {
          const double y = n.val.v[i];
          ag.v[i] += g[i] * y * (1.0 - y);
        }
      }
      break;
    }
    case Op::kTanh: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        for (int i = 0; i < gs; ++i) {
          const double y = n.val.v[i];
          ag.v[i] += g[i] * (1.0 - y * y);
        }
      }
      break;
    }
    case Op::kRelu: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const Tensor& x = nodes_[n.a].val;
        for (int i = 0; i < gs; ++i)
          if (x.v[i] > 0.0) ag.v[i] += g[i];
      }
      break;
    }
    case Op::kSelu: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const Tensor& x = nodes_[n.a].val;
        for (int i = 0; i < gs; ++i) {
          // x > 0: d/dx = scale; x <= 0: d/dx = scale*alpha*e^x = y + scale*alpha
          const double d = x.v[i] > 0.0 ? kSeluScale : n.val.v[i] + kSeluScale * kSeluAlpha;
          ag.v[i] += g[i] * d;
        }
      }
      break;
    }
    case Op::kDot: {
      const double gv = g[0];
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const Tensor& bv = nodes_[n.b].val;
        for (int i = 0; i < ag.size(); ++i) ag.v[i] += gv * bv.v[i];
      }
      if (nodes_[n.b].needs_grad) {
        Tensor& bg = ensure_grad(n.b);
        const Tensor& av = nodes_[n.a].val;
        for (int i = 0; i < bg.size(); ++i) bg.v[i] += gv * av.v[i];
      }
      break;
    }
    case Op::kSum: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const double gv = g[0];
        for (double& x : ag.v) x += gv;
      }
      break;
    }
    case Op::kStack: {
      for (std::size_t i = 0; i < n.extra.size(); ++i) {
        Node& src = nodes_[n.extra[i]];
        if (src.needs_grad) ensure_grad(n.extra[i]).v[0] += g[i];
      }
      break;
    }
    case Op::kMaskedSoftmax: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        double gy = 0.0;
        for (int i = 0; i < gs; ++i)
          if (n.mask[i]) gy += g[i] * n.val.v[i];
        for (int i = 0; i < gs; ++i)
          if (n.mask[i]) ag.v[i] += n.val.v[i] * (g[i] - gy);
      }
      break;
    }
    case Op::kDropout: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        for (int i = 0; i < gs; ++i) ag.v[i] += g[i] * n.aux[i];
      }
      break;
    }
    case Op::kCrossEntropy: {
      if (nodes_[n.a].needs_grad) {
        Tensor& ag = ensure_grad(n.a);
        const double p = nodes_[n.a].val.v[n.i0];
        ag.v[n.i0] -= g[0] / (p + kLossEpsilon);
      }
      break;
    }
    case Op::kDecaySum: {
      const Tensor& w = nodes_[n.b].val;
      const bool weights_need = nodes_[n.b].needs_grad;
      Tensor* wg = weights_need ? &ensure_grad(n.b) : nullptr;
      for (std::size_t t = 0; t < n.extra.size(); ++t) {
        Node& src = nodes_[n.extra[t]];
        const double d = n.aux[t];
        if (src.needs_grad) {
          Tensor& sg = ensure_grad(n.extra[t]);
          const double c = w.v[t] * (n.flag ? 1.0 : d);
          for (int i = 0; i < gs; ++i) sg.v[i] += c * g[i];
        }
        if (weights_need) {
          double acc = 0.0;
          for (int i = 0; i < gs; ++i) acc += g[i] * src.val.v[i];
          wg->v[t] += d * acc;
        }
      }
      break;
    }
  }
}

}  // namespace pdn
