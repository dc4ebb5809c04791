#pragma once

#include <vector>

#include "blocktrain/autodiff.hpp"

namespace blocktrain {

// argmax per row of a [B,N] tensor; lowest index wins ties.
template <class S>
std::vector<int> argmax_rows(const Tensor<S>& t);

namespace op {

template <class S>
Variable<S> add(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b);
template <class S>
Variable<S> sub(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b);
template <class S>
Variable<S> mul(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b);
template <class S>
Variable<S> scale(Tape<S>& tape, const Variable<S>& a, S c);
template <class S>
Variable<S> relu(Tape<S>& tape, const Variable<S>& a);
template <class S>
Variable<S> matmul(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b);
template <class S>
Variable<S> sum(Tape<S>& tape, const Variable<S>& a);  // -> scalar
template <class S>
Variable<S> mean(Tape<S>& tape, const Variable<S>& a);  // -> scalar

// x[B,F] * w[N,F]^T + bias[N] per row.
template <class S>
Variable<S> dense(Tape<S>& tape, const Variable<S>& x, const Variable<S>& w, const Variable<S>& bias);

// Cross-correlation with zero padding; H' = (H + 2*pad - kh)/stride + 1.
// x[B,C,H,W], w[OC,C,KH,KW], bias[OC] (bias may be empty).
template <class S>
Variable<S> conv2d(Tape<S>& tape, const Variable<S>& x, const Variable<S>& w, const Variable<S>& bias,
                   int stride, int pad);

// Valid (unpadded) max pooling; backward routes to the argmax, lowest flat
// index on ties.
template <class S>
Variable<S> maxpool2d(Tape<S>& tape, const Variable<S>& x, int k, int stride);

// Global average pooling [B,C,H,W] -> [B,C].
template <class S>
Variable<S> gap(Tape<S>& tape, const Variable<S>& x);

// Identity-shortcut addition; shapes must match exactly (projection shortcuts
// are explicit 1x1 convolutions, never implicit).
template <class S>
Variable<S> residual_add(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b);

// Per-channel batch normalization over (B,H,W), eps 1e-5. Train mode uses
// batch statistics (biased variance) and folds them into running_mean /
// running_var with the given momentum; eval mode is a deterministic affine map
// through the running statistics.
template <class S>
Variable<S> batchnorm(Tape<S>& tape, const Variable<S>& x, const Variable<S>& gamma,
                      const Variable<S>& beta, Tensor<S>& running_mean, Tensor<S>& running_var,
                      bool train, S momentum = S(0.1), S eps = S(1e-5));

template <class S>
struct SoftmaxCeResult {
  Variable<S> loss;  // scalar, mean over the batch
  Tensor<S> probs;   // [B,N] softmax rows (the local output vector)
};

// Fused log-sum-exp softmax cross-entropy; gradient w.r.t. logits is
// (softmax - onehot) / B.
template <class S>
SoftmaxCeResult<S> softmax_ce(Tape<S>& tape, const Variable<S>& logits, const std::vector<int>& labels);

}  // namespace op
}  // namespace blocktrain
