#include "conv_kernels.hpp"

#include <stdexcept>

#include "parallel.hpp"

namespace blocktrain::detail {

ConvDims conv_dims(const Shape& x, const Shape& w, int stride, int pad) {
  if (x.size() != 4 || w.size() != 4) {
    throw std::invalid_argument("conv2d expects x[B,C,H,W] and w[OC,C,KH,KW], got " + shape_str(x) +
                                " and " + shape_str(w));
  }
  if (x[1] != w[1]) {
    throw std::invalid_argument("conv2d channel mismatch: input has " + std::to_string(x[1]) +
                                ", weight expects " + std::to_string(w[1]));
  }
  if (stride < 1) throw std::invalid_argument("conv2d stride must be >= 1");
  if (pad < 0) throw std::invalid_argument("conv2d pad must be >= 0");
  ConvDims d{};
  d.batch = x[0];
  d.in_ch = x[1];
  d.in_h = x[2];
  d.in_w = x[3];
  d.out_ch = w[0];
  d.kh = w[2];
  d.kw = w[3];
  d.stride = stride;
  d.pad = pad;
  const std::int64_t ph = d.in_h + 2 * pad, pw = d.in_w + 2 * pad;
  if (d.kh > ph || d.kw > pw) {
    throw std::invalid_argument("conv2d kernel " + std::to_string(d.kh) + "x" + std::to_string(d.kw) +
                                " larger than padded input " + std::to_string(ph) + "x" + std::to_string(pw));
  }
  d.out_h = (ph - d.kh) / stride + 1;
  d.out_w = (pw - d.kw) / stride + 1;
  return d;
}

namespace {

// [B*OH*OW, C*KH*KW], column index ordered (c, kh, kw) ascending.
template <class S>
Tensor<S> im2col(const Tensor<S>& x, const ConvDims& d) {
  const std::int64_t rows = d.batch * d.out_h * d.out_w;
  const std::int64_t cols = d.in_ch * d.kh * d.kw;
  Tensor<S> out({rows, cols});
  const S* xp = x.ptr();
  S* op = out.ptr();
  const std::int64_t hw = d.in_h * d.in_w;
  parallel_for(rows, [&](std::int64_t r) {
    const std::int64_t ow = r % d.out_w;
    const std::int64_t oh = (r / d.out_w) % d.out_h;
    const std::int64_t b = r / (d.out_w * d.out_h);
    const std::int64_t ih0 = oh * d.stride - d.pad;
    const std::int64_t iw0 = ow * d.stride - d.pad;
    S* row = op + r * cols;
    const S* xb = xp + b * d.in_ch * hw;
    std::int64_t col = 0;
    for (std::int64_t c = 0; c < d.in_ch; ++c) {
      const S* xc = xb + c * hw;
      for (std::int64_t kh = 0; kh < d.kh; ++kh) {
        const std::int64_t ih = ih0 + kh;
        for (std::int64_t kw = 0; kw < d.kw; ++kw, ++col) {
          const std::int64_t iw = iw0 + kw;
          row[col] = (ih >= 0 && ih < d.in_h && iw >= 0 && iw < d.in_w) ? xc[ih * d.in_w + iw] : S(0);
        }
      }
    }
  });
  return out;
}

}  // namespace

template <class S>
Tensor<S> conv2d_forward(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>& bias,
                         const ConvDims& d) {
  const bool has_bias = bias.numel() > 0;
  if (has_bias && (bias.rank() != 1 || bias.shape()[0] != d.out_ch)) {
    throw std::invalid_argument("conv2d bias shape " + shape_str(bias.shape()) + " does not match out channels " +
                                std::to_string(d.out_ch));
  }
  const Tensor<S> cols = im2col(x, d);
  // w [OC, C*KH*KW] -> transpose so out rows stay contiguous per pixel.
  Tensor<S> wt({d.in_ch * d.kh * d.kw, d.out_ch});
  {
    const S* wp = w.ptr();
    S* tp = wt.ptr();
    const std::int64_t k = d.in_ch * d.kh * d.kw;
    for (std::int64_t oc = 0; oc < d.out_ch; ++oc) {
      for (std::int64_t i = 0; i < k; ++i) tp[i * d.out_ch + oc] = wp[oc * k + i];
    }
  }
  const Tensor<S> out_mat = blocktrain::matmul(cols, wt);  // [B*OH*OW, OC]
  Tensor<S> out({d.batch, d.out_ch, d.out_h, d.out_w});
  const std::int64_t ohw = d.out_h * d.out_w;
  const S* mp = out_mat.ptr();
  const S* bp = has_bias ? bias.ptr() : nullptr;
  S* op = out.ptr();
  parallel_for(d.batch * d.out_ch, [&](std::int64_t bc) {
    const std::int64_t b = bc / d.out_ch;
    const std::int64_t oc = bc % d.out_ch;
    const S bv = bp ? bp[oc] : S(0);
    S* dst = op + (b * d.out_ch + oc) * ohw;
    const S* src = mp + b * ohw * d.out_ch + oc;
    for (std::int64_t i = 0; i < ohw; ++i) dst[i] = src[i * d.out_ch] + bv;
  });
  return out;
}

template <class S>
Tensor<S> conv2d_grad_input(const Tensor<S>& gout, const Tensor<S>& w, const ConvDims& d) {
  Tensor<S> dx({d.batch, d.in_ch, d.in_h, d.in_w});
  const S* gp = gout.ptr();
  const S* wp = w.ptr();
  S* dp = dx.ptr();
  const std::int64_t ohw = d.out_h * d.out_w;
  const std::int64_t wk = d.in_ch * d.kh * d.kw;
  // Gather form: each input cell sums the contributions of every output
  // window covering it, (kh, kw, oc) ascending. Race-free under parallel_for.
  parallel_for(d.batch * d.in_ch, [&](std::int64_t bc) {
    const std::int64_t b = bc / d.in_ch;
    const std::int64_t c = bc % d.in_ch;
    const S* gb = gp + b * d.out_ch * ohw;
    for (std::int64_t ih = 0; ih < d.in_h; ++ih) {
      for (std::int64_t iw = 0; iw < d.in_w; ++iw) {
        S acc = 0;
        for (std::int64_t kh = 0; kh < d.kh; ++kh) {
          const std::int64_t oh_num = ih + d.pad - kh;
          if (oh_num < 0 || oh_num % d.stride != 0) continue;
          const std::int64_t oh = oh_num / d.stride;
          if (oh >= d.out_h) continue;
          for (std::int64_t kw = 0; kw < d.kw; ++kw) {
            const std::int64_t ow_num = iw + d.pad - kw;
            if (ow_num < 0 || ow_num % d.stride != 0) continue;
            const std::int64_t ow = ow_num / d.stride;
            if (ow >= d.out_w) continue;
            const std::int64_t woff = c * d.kh * d.kw + kh * d.kw + kw;
            for (std::int64_t oc = 0; oc < d.out_ch; ++oc) {
              acc += gb[oc * ohw + oh * d.out_w + ow] * wp[oc * wk + woff];
            }
          }
        }
        dp[(bc * d.in_h + ih) * d.in_w + iw] = acc;
      }
    }
  });
  return dx;
}

template <class S>
Tensor<S> conv2d_grad_weight(const Tensor<S>& gout, const Tensor<S>& x, const ConvDims& d) {
  // dW[oc, k] = sum_r gout_mat[r, oc] * cols[r, k], r ascending.
  const Tensor<S> cols = im2col(x, d);
  const std::int64_t rows = d.batch * d.out_h * d.out_w;
  const std::int64_t k = d.in_ch * d.kh * d.kw;
  Tensor<S> gmat({d.out_ch, rows});
  {
    const S* gp = gout.ptr();
    S* mp = gmat.ptr();
    const std::int64_t ohw = d.out_h * d.out_w;
    for (std::int64_t b = 0; b < d.batch; ++b) {
      for (std::int64_t oc = 0; oc < d.out_ch; ++oc) {
        const S* src = gp + (b * d.out_ch + oc) * ohw;
        S* dst = mp + oc * rows + b * ohw;
        for (std::int64_t i = 0; i < ohw; ++i) dst[i] = src[i];
      }
    }
  }
  Tensor<S> dw_mat = blocktrain::matmul(gmat, cols);  // [OC, k]
  return Tensor<S>({d.out_ch, d.in_ch, d.kh, d.kw}, std::vector<S>(dw_mat.data().begin(), dw_mat.data().end()));
}

template <class S>
Tensor<S> conv2d_grad_bias(const Tensor<S>& gout, const ConvDims& d) {
  Tensor<S> db({d.out_ch});
  const S* gp = gout.ptr();
  const std::int64_t ohw = d.out_h * d.out_w;
  S* dp = db.ptr();
  for (std::int64_t b = 0; b < d.batch; ++b) {
    for (std::int64_t oc = 0; oc < d.out_ch; ++oc) {
      const S* src = gp + (b * d.out_ch + oc) * ohw;
      S acc = 0;
      for (std::int64_t i = 0; i < ohw; ++i) acc += src[i];
      dp[oc] += acc;
    }
  }
  return db;
}

#define BLOCKTRAIN_INSTANTIATE(S)                                                                   \
  template Tensor<S> conv2d_forward<S>(const Tensor<S>&, const Tensor<S>&, const Tensor<S>&,       \
                                       const ConvDims&);                                           \
  template Tensor<S> conv2d_grad_input<S>(const Tensor<S>&, const Tensor<S>&, const ConvDims&);    \
  template Tensor<S> conv2d_grad_weight<S>(const Tensor<S>&, const Tensor<S>&, const ConvDims&);   \
  template Tensor<S> conv2d_grad_bias<S>(const Tensor<S>&, const ConvDims&);

BLOCKTRAIN_INSTANTIATE(float)
BLOCKTRAIN_INSTANTIATE(double)
#undef BLOCKTRAIN_INSTANTIATE

}  // namespace blocktrain::detail
