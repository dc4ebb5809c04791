#pragma once

#include <string>
#include <vector>

#include "blocktrain/ops.hpp"
#include "blocktrain/rng.hpp"

namespace blocktrain {

enum class LayerKind { conv2d, dense, batchnorm, relu, maxpool };

/// One parameterized (or parameter-free) layer. Conv/dense carry
/// {weight, bias}, batchnorm carries {gamma, beta} plus running statistics;
/// velocity buffers mirror params for SGD momentum.
template <class S>
struct Layer {
  LayerKind kind;
  int in_ch = 0;
  int out_ch = 0;
  int kernel = 0;
  int stride = 1;
  int pad = 0;
  std::vector<Tensor<S>> params;
  std::vector<Tensor<S>> velocity;
  Tensor<S> running_mean, running_var;  // batchnorm only; train-mode forward updates them
};

// He-normal weights, zero biases; gamma=1, beta=0, running stats (0, 1).
template <class S>
Layer<S> make_conv(int in_ch, int out_ch, int kernel, int stride, int pad, Rng& rng);
template <class S>
Layer<S> make_dense(int in_features, int out_features, Rng& rng);
template <class S>
Layer<S> make_batchnorm(int channels);
template <class S>
Layer<S> make_relu();
template <class S>
Layer<S> make_maxpool(int k, int stride);

/// Per-step view of a layer with its parameters bound onto a tape (tracked
/// leaves) or frozen as constants.
template <class S>
struct BoundLayer {
  Layer<S>* layer = nullptr;
  std::vector<Variable<S>> params;  // aligned with layer->params
};

template <class S>
BoundLayer<S> bind_layer(Tape<S>& tape, Layer<S>& l);
template <class S>
BoundLayer<S> bind_layer_frozen(Layer<S>& l);

template <class S>
Variable<S> forward_layer(Tape<S>& tape, const BoundLayer<S>& bl, const Variable<S>& x, bool train);

/// The indivisible partition atom: a conv group (conv[-bn]-relu[-pool]) or a
/// residual unit (main path + optional projection shortcut, relu after add).
template <class S>
struct Unit {
  std::vector<Layer<S>> main;
  std::vector<Layer<S>> shortcut;  // empty = identity shortcut
  bool residual = false;
};

template <class S>
struct BoundUnit {
  Unit<S>* unit = nullptr;
  std::vector<BoundLayer<S>> main, shortcut;
};

template <class S>
BoundUnit<S> bind_unit(Tape<S>& tape, Unit<S>& u);
template <class S>
BoundUnit<S> bind_unit_frozen(Unit<S>& u);
template <class S>
Variable<S> forward_unit(Tape<S>& tape, const BoundUnit<S>& bu, const Variable<S>& x, bool train);

/// Global-average-pool + dense tap producing [B, num_classes] logits. Serves
/// both as the per-block auxiliary head and as the output-layer classifier.
template <class S>
struct Head {
  Layer<S> fc;
};

template <class S>
Head<S> make_head(int in_channels, int num_classes, Rng& rng);

template <class S>
struct BoundHead {
  BoundLayer<S> fc;
};

template <class S>
BoundHead<S> bind_head(Tape<S>& tape, Head<S>& h);
template <class S>
BoundHead<S> bind_head_frozen(Head<S>& h);
template <class S>
Variable<S> forward_head(Tape<S>& tape, const BoundHead<S>& bh, const Variable<S>& x, bool train);

/// Named handle on one trainable tensor and its velocity buffer.
template <class S>
struct ParamRef {
  Tensor<S>* value = nullptr;
  Tensor<S>* velocity = nullptr;
  std::string name;
};

template <class S>
void collect_params(Layer<S>& l, const std::string& prefix, std::vector<ParamRef<S>>& out);
template <class S>
void collect_params(Unit<S>& u, const std::string& prefix, std::vector<ParamRef<S>>& out);
template <class S>
void collect_params(Head<S>& h, const std::string& prefix, std::vector<ParamRef<S>>& out);

template <class S>
std::int64_t param_count(const std::vector<ParamRef<S>>& refs);

}  // namespace blocktrain
