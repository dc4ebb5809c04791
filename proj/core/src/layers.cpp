#include "blocktrain/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace blocktrain {

namespace {

template <class S>
void add_param(Layer<S>& l, Tensor<S> value) {
  l.velocity.emplace_back(value.shape());  // zero-initialized
  l.params.push_back(std::move(value));
}

}  // namespace

template <class S>
Layer<S> make_conv(int in_ch, int out_ch, int kernel, int stride, int pad, Rng& rng) {
  Layer<S> l;
  l.kind = LayerKind::conv2d;
  l.in_ch = in_ch;
  l.out_ch = out_ch;
  l.kernel = kernel;
  l.stride = stride;
  l.pad = pad;
  const double fan_in = static_cast<double>(in_ch) * kernel * kernel;
  const S std_dev = static_cast<S>(std::sqrt(2.0 / fan_in));
  add_param(l, rng.normal<S>({out_ch, in_ch, kernel, kernel}, S(0), std_dev));
  add_param(l, Tensor<S>({out_ch}));
  return l;
}

template <class S>
Layer<S> make_dense(int in_features, int out_features, Rng& rng) {
  Layer<S> l;
  l.kind = LayerKind::dense;
  l.in_ch = in_features;
  l.out_ch = out_features;
  const S std_dev = static_cast<S>(std::sqrt(2.0 / static_cast<double>(in_features)));
  add_param(l, rng.normal<S>({out_features, in_features}, S(0), std_dev));
  add_param(l, Tensor<S>({out_features}));
  return l;
}

template <class S>
Layer<S> make_batchnorm(int channels) {
  Layer<S> l;
  l.kind = LayerKind::batchnorm;
  l.in_ch = channels;
  l.out_ch = channels;
  add_param(l, Tensor<S>::full({channels}, S(1)));  // gamma
  add_param(l, Tensor<S>({channels}));              // beta
  l.running_mean = Tensor<S>({channels});
  l.running_var = Tensor<S>::full({channels}, S(1));
  return l;
}

template <class S>
Layer<S> make_relu() {
  Layer<S> l;
  l.kind = LayerKind::relu;
  return l;
}

template <class S>
Layer<S> make_maxpool(int k, int stride) {
  Layer<S> l;
  l.kind = LayerKind::maxpool;
  l.kernel = k;
  l.stride = stride;
  return l;
}

template <class S>
BoundLayer<S> bind_layer(Tape<S>& tape, Layer<S>& l) {
  BoundLayer<S> b{&l, {}};
  b.params.reserve(l.params.size());
  for (Tensor<S>& p : l.params) b.params.push_back(tape.leaf(p));
  return b;
}

template <class S>
BoundLayer<S> bind_layer_frozen(Layer<S>& l) {
  BoundLayer<S> b{&l, {}};
  b.params.reserve(l.params.size());
  for (Tensor<S>& p : l.params) b.params.push_back(Tape<S>::constant(p));
  return b;
}

template <class S>
Variable<S> forward_layer(Tape<S>& tape, const BoundLayer<S>& bl, const Variable<S>& x, bool train) {
  const Layer<S>& l = *bl.layer;
  switch (l.kind) {
    case LayerKind::conv2d:
      return op::conv2d(tape, x, bl.params[0], bl.params[1], l.stride, l.pad);
    case LayerKind::dense:
      return op::dense(tape, x, bl.params[0], bl.params[1]);
    case LayerKind::batchnorm:
      return op::batchnorm(tape, x, bl.params[0], bl.params[1], bl.layer->running_mean,
                           bl.layer->running_var, train);
    case LayerKind::relu:
      return op::relu(tape, x);
    case LayerKind::maxpool:
      return op::maxpool2d(tape, x, l.kernel, l.stride);
  }
  throw std::logic_error("unknown layer kind");
}

template <class S>
BoundUnit<S> bind_unit(Tape<S>& tape, Unit<S>& u) {
  BoundUnit<S> b{&u, {}, {}};
  for (Layer<S>& l : u.main) b.main.push_back(bind_layer(tape, l));
  for (Layer<S>& l : u.shortcut) b.shortcut.push_back(bind_layer(tape, l));
  return b;
}

template <class S>
BoundUnit<S> bind_unit_frozen(Unit<S>& u) {
  BoundUnit<S> b{&u, {}, {}};
  for (Layer<S>& l : u.main) b.main.push_back(bind_layer_frozen(l));
  for (Layer<S>& l : u.shortcut) b.shortcut.push_back(bind_layer_frozen(l));
  return b;
}

template <class S>
Variable<S> forward_unit(Tape<S>& tape, const BoundUnit<S>& bu, const Variable<S>& x, bool train) {
  Variable<S> y = x;
  for (const BoundLayer<S>& bl : bu.main) y = forward_layer(tape, bl, y, train);
  if (!bu.unit->residual) return y;
  Variable<S> s = x;
  for (const BoundLayer<S>& bl : bu.shortcut) s = forward_layer(tape, bl, s, train);
  return op::relu(tape, op::residual_add(tape, y, s));
}

template <class S>
Head<S> make_head(int in_channels, int num_classes, Rng& rng) {
  return Head<S>{make_dense<S>(in_channels, num_classes, rng)};
}

template <class S>
BoundHead<S> bind_head(Tape<S>& tape, Head<S>& h) {
  return BoundHead<S>{bind_layer(tape, h.fc)};
}

template <class S>
BoundHead<S> bind_head_frozen(Head<S>& h) {
  return BoundHead<S>{bind_layer_frozen(h.fc)};
}

template <class S>
Variable<S> forward_head(Tape<S>& tape, const BoundHead<S>& bh, const Variable<S>& x, bool train) {
  Variable<S> pooled = op::gap(tape, x);
  return forward_layer(tape, bh.fc, pooled, train);
}

namespace {

template <class S>
const char* param_label(const Layer<S>& l, std::size_t i) {
  if (l.kind == LayerKind::batchnorm) return i == 0 ? "gamma" : "beta";
  return i == 0 ? "weight" : "bias";
}

}  // namespace

template <class S>
void collect_params(Layer<S>& l, const std::string& prefix, std::vector<ParamRef<S>>& out) {
  for (std::size_t i = 0; i < l.params.size(); ++i) {
    out.push_back(ParamRef<S>{&l.params[i], &l.velocity[i], prefix + "." + param_label(l, i)});
  }
}

template <class S>
void collect_params(Unit<S>& u, const std::string& prefix, std::vector<ParamRef<S>>& out) {
  for (std::size_t i = 0; i < u.main.size(); ++i) {
    collect_params(u.main[i], prefix + ".main" + std::to_string(i), out);
  }
  for (std::size_t i = 0; i < u.shortcut.size(); ++i) {
    collect_params(u.shortcut[i], prefix + ".shortcut" + std::to_string(i), out);
  }
}

template <class S>
void collect_params(Head<S>& h, const std::string& prefix, std::vector<ParamRef<S>>& out) {
  collect_params(h.fc, prefix + ".fc", out);
}

template <class S>
std::int64_t param_count(const std::vector<ParamRef<S>>& refs) {
  std::int64_t n = 0;
  for (const ParamRef<S>& r : refs) n += r.value->numel();
  return n;
}

#define BLOCKTRAIN_INSTANTIATE(S)                                                             \
  template Layer<S> make_conv<S>(int, int, int, int, int, Rng&);                             \
  template Layer<S> make_dense<S>(int, int, Rng&);                                           \
  template Layer<S> make_batchnorm<S>(int);                                                  \
  template Layer<S> make_relu<S>();                                                          \
  template Layer<S> make_maxpool<S>(int, int);                                               \
  template BoundLayer<S> bind_layer<S>(Tape<S>&, Layer<S>&);                                 \
  template BoundLayer<S> bind_layer_frozen<S>(Layer<S>&);                                    \
  template Variable<S> forward_layer<S>(Tape<S>&, const BoundLayer<S>&, const Variable<S>&, bool); \
  template BoundUnit<S> bind_unit<S>(Tape<S>&, Unit<S>&);                                    \
  template BoundUnit<S> bind_unit_frozen<S>(Unit<S>&);                                       \
  template Variable<S> forward_unit<S>(Tape<S>&, const BoundUnit<S>&, const Variable<S>&, bool); \
  template Head<S> make_head<S>(int, int, Rng&);                                             \
  template BoundHead<S> bind_head<S>(Tape<S>&, Head<S>&);                                    \
  template BoundHead<S> bind_head_frozen<S>(Head<S>&);                                       \
  template Variable<S> forward_head<S>(Tape<S>&, const BoundHead<S>&, const Variable<S>&, bool); \
  template void collect_params<S>(Layer<S>&, const std::string&, std::vector<ParamRef<S>>&); \
  template void collect_params<S>(Unit<S>&, const std::string&, std::vector<ParamRef<S>>&);  \
  template void collect_params<S>(Head<S>&, const std::string&, std::vector<ParamRef<S>>&);  \
  template std::int64_t param_count<S>(const std::vector<ParamRef<S>>&);

BLOCKTRAIN_INSTANTIATE(float)
BLOCKTRAIN_INSTANTIATE(double)
#undef BLOCKTRAIN_INSTANTIATE

}  // namespace blocktrain
