#pragma once

#include "blocktrain/tensor.hpp"

namespace blocktrain::detail {

struct ConvDims {
  std::int64_t batch, in_ch, in_h, in_w;
  std::int64_t out_ch, kh, kw;
  int stride, pad;
  std::int64_t out_h, out_w;
};

ConvDims conv_dims(const Shape& x, const Shape& w, int stride, int pad);

template <class S>
Tensor<S> conv2d_forward(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>& bias,
                         const ConvDims& d);
template <class S>
Tensor<S> conv2d_grad_input(const Tensor<S>& gout, const Tensor<S>& w, const ConvDims& d);
template <class S>
Tensor<S> conv2d_grad_weight(const Tensor<S>& gout, const Tensor<S>& x, const ConvDims& d);
template <class S>
Tensor<S> conv2d_grad_bias(const Tensor<S>& gout, const ConvDims& d);

}  // namespace blocktrain::detail
