#include "blocktrain/ops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "conv_kernels.hpp"
#include "parallel.hpp"

namespace blocktrain {

template <class S>
std::vector<int> argmax_rows(const Tensor<S>& t) {
  if (t.rank() != 2) throw std::invalid_argument("argmax_rows expects [B,N], got " + shape_str(t.shape()));
  const std::int64_t b = t.shape()[0], n = t.shape()[1];
  if (n == 0) throw std::invalid_argument("argmax_rows: empty rows");
  std::vector<int> out(static_cast<std::size_t>(b));
  for (std::int64_t i = 0; i < b; ++i) {
    const S* row = t.ptr() + i * n;
    int best = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      if (row[j] > row[best]) best = static_cast<int>(j);
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

namespace op {

namespace {

template <class S>
std::vector<NodeId> parents_of(std::initializer_list<const Variable<S>*> vars) {
  std::vector<NodeId> ps;
  for (const Variable<S>* v : vars) {
    if (v->tracked()) ps.push_back(v->node);
  }
  return ps;
}

}  // namespace

template <class S>
Variable<S> add(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b) {
  Tensor<S> out = blocktrain::add(a.value, b.value);
  auto ps = parents_of<S>({&a, &b});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node, pb = b.node;
  const NodeId id = tape.append("add", std::move(ps), [pa, pb](const Tensor<S>& g, GradientMap<S>& sink) {
    if (pa != kNoNode) sink.accumulate(pa, g);
    if (pb != kNoNode) sink.accumulate(pb, g);
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> sub(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b) {
  Tensor<S> out = blocktrain::sub(a.value, b.value);
  auto ps = parents_of<S>({&a, &b});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node, pb = b.node;
  const NodeId id = tape.append("sub", std::move(ps), [pa, pb](const Tensor<S>& g, GradientMap<S>& sink) {
    if (pa != kNoNode) sink.accumulate(pa, g);
    if (pb != kNoNode) sink.accumulate(pb, blocktrain::scale(g, S(-1)));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> mul(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b) {
  Tensor<S> out = blocktrain::mul(a.value, b.value);
  auto ps = parents_of<S>({&a, &b});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node, pb = b.node;
  const Tensor<S> av = a.value, bv = b.value;
  const NodeId id = tape.append("mul", std::move(ps), [pa, pb, av, bv](const Tensor<S>& g, GradientMap<S>& sink) {
    if (pa != kNoNode) sink.accumulate(pa, blocktrain::mul(g, bv));
    if (pb != kNoNode) sink.accumulate(pb, blocktrain::mul(g, av));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> scale(Tape<S>& tape, const Variable<S>& a, S c) {
  Tensor<S> out = blocktrain::scale(a.value, c);
  if (!a.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node;
  const NodeId id = tape.append("scale", {pa}, [pa, c](const Tensor<S>& g, GradientMap<S>& sink) {
    sink.accumulate(pa, blocktrain::scale(g, c));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> relu(Tape<S>& tape, const Variable<S>& a) {
  Tensor<S> out = blocktrain::relu(a.value);
  if (!a.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node;
  const Tensor<S> mask_src = out;  // out > 0 iff input > 0
  const NodeId id = tape.append("relu", {pa}, [pa, mask_src](const Tensor<S>& g, GradientMap<S>& sink) {
    Tensor<S> dx(g.shape());
    const S* gp = g.ptr();
    const S* mp = mask_src.ptr();
    S* dp = dx.ptr();
    const std::int64_t n = g.numel();
    for (std::int64_t i = 0; i < n; ++i) dp[i] = mp[i] > S(0) ? gp[i] : S(0);
    sink.accumulate(pa, dx);
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> matmul(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b) {
  Tensor<S> out = blocktrain::matmul(a.value, b.value);
  auto ps = parents_of<S>({&a, &b});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node, pb = b.node;
  const Tensor<S> av = a.value, bv = b.value;
  const NodeId id = tape.append("matmul", std::move(ps), [pa, pb, av, bv](const Tensor<S>& g, GradientMap<S>& sink) {
    if (pa != kNoNode) sink.accumulate(pa, blocktrain::matmul(g, blocktrain::transpose(bv)));
    if (pb != kNoNode) sink.accumulate(pb, blocktrain::matmul(blocktrain::transpose(av), g));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> sum(Tape<S>& tape, const Variable<S>& a) {
  Tensor<S> out = Tensor<S>::scalar(sum_all(a.value));
  if (!a.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node;
  const Shape shape = a.value.shape();
  const NodeId id = tape.append("sum", {pa}, [pa, shape](const Tensor<S>& g, GradientMap<S>& sink) {
    sink.accumulate(pa, Tensor<S>::full(shape, g[0]));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> mean(Tape<S>& tape, const Variable<S>& a) {
  const std::int64_t n = a.value.numel();
  if (n == 0) throw std::invalid_argument("mean of empty tensor");
  Tensor<S> out = Tensor<S>::scalar(sum_all(a.value) / static_cast<S>(n));
  if (!a.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId pa = a.node;
  const Shape shape = a.value.shape();
  const NodeId id = tape.append("mean", {pa}, [pa, shape, n](const Tensor<S>& g, GradientMap<S>& sink) {
    sink.accumulate(pa, Tensor<S>::full(shape, g[0] / static_cast<S>(n)));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> dense(Tape<S>& tape, const Variable<S>& x, const Variable<S>& w, const Variable<S>& bias) {
  const Shape& xs = x.value.shape();
  const Shape& ws = w.value.shape();
  if (xs.size() != 2 || ws.size() != 2 || xs[1] != ws[1]) {
    throw std::invalid_argument("dense shape mismatch: x " + shape_str(xs) + ", w " + shape_str(ws));
  }
  if (bias.value.rank() != 1 || bias.value.shape()[0] != ws[0]) {
    throw std::invalid_argument("dense bias shape " + shape_str(bias.value.shape()) + " vs out features " +
                                std::to_string(ws[0]));
  }
  const std::int64_t b = xs[0], f = xs[1], n = ws[0];
  Tensor<S> out({b, n});
  {
    const S* xp = x.value.ptr();
    const S* wp = w.value.ptr();
    const S* bp = bias.value.ptr();
    S* op = out.ptr();
    detail::parallel_for(b, [&](std::int64_t i) {
      for (std::int64_t j = 0; j < n; ++j) {
        S acc = 0;
        const S* xr = xp + i * f;
        const S* wr = wp + j * f;
        for (std::int64_t kk = 0; kk < f; ++kk) acc += xr[kk] * wr[kk];
        op[i * n + j] = acc + bp[j];
      }
    });
  }
  auto ps = parents_of<S>({&x, &w, &bias});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId px = x.node, pw = w.node, pb = bias.node;
  const Tensor<S> xv = x.value, wv = w.value;
  const NodeId id = tape.append("dense", std::move(ps), [px, pw, pb, xv, wv](const Tensor<S>& g, GradientMap<S>& sink) {
    if (px != kNoNode) sink.accumulate(px, blocktrain::matmul(g, wv));
    if (pw != kNoNode) sink.accumulate(pw, blocktrain::matmul(blocktrain::transpose(g), xv));
    if (pb != kNoNode) {
      const std::int64_t rows = g.shape()[0], cols = g.shape()[1];
      Tensor<S> db({cols});
      for (std::int64_t i = 0; i < rows; ++i) {
        for (std::int64_t j = 0; j < cols; ++j) db[j] += g.ptr()[i * cols + j];
      }
      sink.accumulate(pb, db);
    }
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> conv2d(Tape<S>& tape, const Variable<S>& x, const Variable<S>& w, const Variable<S>& bias,
                   int stride, int pad) {
  const detail::ConvDims d = detail::conv_dims(x.value.shape(), w.value.shape(), stride, pad);
  Tensor<S> out = detail::conv2d_forward(x.value, w.value, bias.value, d);
  auto ps = parents_of<S>({&x, &w, &bias});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId px = x.node, pw = w.node, pb = bias.node;
  const Tensor<S> xv = x.value, wv = w.value;
  const NodeId id = tape.append("conv2d", std::move(ps), [px, pw, pb, xv, wv, d](const Tensor<S>& g, GradientMap<S>& sink) {
    if (px != kNoNode) sink.accumulate(px, detail::conv2d_grad_input(g, wv, d));
    if (pw != kNoNode) sink.accumulate(pw, detail::conv2d_grad_weight(g, xv, d));
    if (pb != kNoNode) sink.accumulate(pb, detail::conv2d_grad_bias(g, d));
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> maxpool2d(Tape<S>& tape, const Variable<S>& x, int k, int stride) {
  const Shape& xs = x.value.shape();
  if (xs.size() != 4) throw std::invalid_argument("maxpool2d expects [B,C,H,W], got " + shape_str(xs));
  if (k < 1 || stride < 1) throw std::invalid_argument("maxpool2d k and stride must be >= 1");
  const std::int64_t b = xs[0], c = xs[1], h = xs[2], w = xs[3];
  if (k > h || k > w) {
    throw std::invalid_argument("maxpool2d window " + std::to_string(k) + " larger than input " +
                                std::to_string(h) + "x" + std::to_string(w));
  }
  const std::int64_t oh = (h - k) / stride + 1;
  const std::int64_t ow = (w - k) / stride + 1;
  Tensor<S> out({b, c, oh, ow});
  auto argmax = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(out.numel()));
  const S* xp = x.value.ptr();
  S* op = out.ptr();
  detail::parallel_for(b * c, [&](std::int64_t bc) {
    const S* plane = xp + bc * h * w;
    S* oplane = op + bc * oh * ow;
    std::int64_t* aplane = argmax->data() + bc * oh * ow;
    for (std::int64_t i = 0; i < oh; ++i) {
      for (std::int64_t j = 0; j < ow; ++j) {
        std::int64_t best = (i * stride) * w + j * stride;
        S bv = plane[best];
        for (std::int64_t ki = 0; ki < k; ++ki) {
          for (std::int64_t kj = 0; kj < k; ++kj) {
            const std::int64_t idx = (i * stride + ki) * w + (j * stride + kj);
            if (plane[idx] > bv) {  // strict: lowest flat index wins ties
              bv = plane[idx];
              best = idx;
            }
          }
        }
        oplane[i * ow + j] = bv;
        aplane[i * ow + j] = bc * h * w + best;
      }
    }
  });
  if (!x.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId px = x.node;
  const Shape in_shape = xs;
  const NodeId id = tape.append("maxpool2d", {px}, [px, argmax, in_shape](const Tensor<S>& g, GradientMap<S>& sink) {
    Tensor<S> dx(in_shape);
    S* dp = dx.ptr();
    const S* gp = g.ptr();
    const std::int64_t n = g.numel();
    for (std::int64_t i = 0; i < n; ++i) dp[(*argmax)[static_cast<std::size_t>(i)]] += gp[i];
    sink.accumulate(px, dx);
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> gap(Tape<S>& tape, const Variable<S>& x) {
  const Shape& xs = x.value.shape();
  if (xs.size() != 4) throw std::invalid_argument("gap expects [B,C,H,W], got " + shape_str(xs));
  const std::int64_t b = xs[0], c = xs[1], hw = xs[2] * xs[3];
  if (hw == 0) throw std::invalid_argument("gap over empty spatial extent");
  Tensor<S> out({b, c});
  const S* xp = x.value.ptr();
  S* op = out.ptr();
  for (std::int64_t bc = 0; bc < b * c; ++bc) {
    const S* plane = xp + bc * hw;
    S acc = 0;
    for (std::int64_t i = 0; i < hw; ++i) acc += plane[i];
    op[bc] = acc / static_cast<S>(hw);
  }
  if (!x.tracked()) return Tape<S>::constant(std::move(out));
  const NodeId px = x.node;
  const Shape in_shape = xs;
  const NodeId id = tape.append("gap", {px}, [px, in_shape, hw](const Tensor<S>& g, GradientMap<S>& sink) {
    Tensor<S> dx(in_shape);
    S* dp = dx.ptr();
    const S* gp = g.ptr();
    const std::int64_t planes = g.numel();
    for (std::int64_t bc = 0; bc < planes; ++bc) {
      const S v = gp[bc] / static_cast<S>(hw);
      S* plane = dp + bc * hw;
      for (std::int64_t i = 0; i < hw; ++i) plane[i] = v;
    }
    sink.accumulate(px, dx);
  });
  return {std::move(out), id};
}

template <class S>
Variable<S> residual_add(Tape<S>& tape, const Variable<S>& a, const Variable<S>& b) {
  if (!a.value.same_shape(b.value)) {
    throw std::invalid_argument("residual_add shape mismatch: " + shape_str(a.value.shape()) + " vs " +
                                shape_str(b.value.shape()));
  }
  return add(tape, a, b);
}

template <class S>
Variable<S> batchnorm(Tape<S>& tape, const Variable<S>& x, const Variable<S>& gamma,
                      const Variable<S>& beta, Tensor<S>& running_mean, Tensor<S>& running_var,
                      bool train, S momentum, S eps) {
  const Shape& xs = x.value.shape();
  if (xs.size() != 4) throw std::invalid_argument("batchnorm expects [B,C,H,W], got " + shape_str(xs));
  const std::int64_t b = xs[0], c = xs[1], h = xs[2], w = xs[3];
  if (gamma.value.numel() != c || beta.value.numel() != c || running_mean.numel() != c || running_var.numel() != c) {
    throw std::invalid_argument("batchnorm parameter size does not match " + std::to_string(c) + " channels");
  }
  const std::int64_t m = b * h * w;
  if (train && m < 2) {
    throw std::invalid_argument("batchnorm train mode needs at least 2 elements per channel, got " +
                                std::to_string(m));
  }

  Tensor<S> mean_c({c}), inv_std_c({c});
  if (train) {
    const S* xp = x.value.ptr();
    for (std::int64_t ch = 0; ch < c; ++ch) {
      S acc = 0;
      for (std::int64_t bi = 0; bi < b; ++bi) {
        const S* plane = xp + (bi * c + ch) * h * w;
        for (std::int64_t i = 0; i < h * w; ++i) acc += plane[i];
      }
      const S mu = acc / static_cast<S>(m);
      S var_acc = 0;
      for (std::int64_t bi = 0; bi < b; ++bi) {
        const S* plane = xp + (bi * c + ch) * h * w;
        for (std::int64_t i = 0; i < h * w; ++i) {
          const S dv = plane[i] - mu;
          var_acc += dv * dv;
        }
      }
      const S var = var_acc / static_cast<S>(m);
      mean_c[ch] = mu;
      inv_std_c[ch] = S(1) / std::sqrt(var + eps);
      running_mean[ch] = (S(1) - momentum) * running_mean[ch] + momentum * mu;
      running_var[ch] = (S(1) - momentum) * running_var[ch] + momentum * var;
    }
  } else {
    for (std::int64_t ch = 0; ch < c; ++ch) {
      mean_c[ch] = running_mean[ch];
      inv_std_c[ch] = S(1) / std::sqrt(running_var[ch] + eps);
    }
  }

  Tensor<S> xhat(xs);
  Tensor<S> out(xs);
  {
    const S* xp = x.value.ptr();
    const S* gp = gamma.value.ptr();
    const S* bp = beta.value.ptr();
    S* hp = xhat.ptr();
    S* op = out.ptr();
    detail::parallel_for(b * c, [&](std::int64_t bc) {
      const std::int64_t ch = bc % c;
      const S mu = mean_c[ch], is = inv_std_c[ch], ga = gp[ch], be = bp[ch];
      const S* src = xp + bc * h * w;
      S* hd = hp + bc * h * w;
      S* od = op + bc * h * w;
      for (std::int64_t i = 0; i < h * w; ++i) {
        const S xh = (src[i] - mu) * is;
        hd[i] = xh;
        od[i] = ga * xh + be;
      }
    });
  }

  auto ps = parents_of<S>({&x, &gamma, &beta});
  if (ps.empty()) return Tape<S>::constant(std::move(out));
  const NodeId px = x.node, pg = gamma.node, pb = beta.node;
  const Tensor<S> gamma_v = gamma.value;
  const Tensor<S> xhat_c = xhat;
  const Tensor<S> inv_std_saved = inv_std_c;
  const NodeId id = tape.append(
      "batchnorm", std::move(ps),
      [px, pg, pb, gamma_v, xhat_c, inv_std_saved, b, c, h, w, m, train](const Tensor<S>& g, GradientMap<S>& sink) {
        const std::int64_t hw = h * w;
        // Per-channel reductions of g and g*xhat.
        Tensor<S> sum_g({c}), sum_gx({c});
        const S* gp = g.ptr();
        const S* hp = xhat_c.ptr();
        for (std::int64_t bi = 0; bi < b; ++bi) {
          for (std::int64_t ch = 0; ch < c; ++ch) {
            const S* gd = gp + (bi * c + ch) * hw;
            const S* hd = hp + (bi * c + ch) * hw;
            S a0 = 0, a1 = 0;
            for (std::int64_t i = 0; i < hw; ++i) {
              a0 += gd[i];
              a1 += gd[i] * hd[i];
            }
            sum_g[ch] += a0;
            sum_gx[ch] += a1;
          }
        }
        if (pb != kNoNode) sink.accumulate(pb, sum_g);
        if (pg != kNoNode) sink.accumulate(pg, sum_gx);
        if (px != kNoNode) {
          Tensor<S> dx({b, c, h, w});
          S* dp = dx.ptr();
          detail::parallel_for(b * c, [&](std::int64_t bc) {
            const std::int64_t ch = bc % c;
            const S ga = gamma_v[ch], is = inv_std_saved[ch];
            const S* gd = gp + bc * hw;
            const S* hd = hp + bc * hw;
            S* dd = dp + bc * hw;
            if (train) {
              const S inv_m = S(1) / static_cast<S>(m);
              const S sg = sum_g[ch], sgx = sum_gx[ch];
              for (std::int64_t i = 0; i < hw; ++i) {
                dd[i] = ga * is * (gd[i] - inv_m * sg - hd[i] * inv_m * sgx);
              }
            } else {
              for (std::int64_t i = 0; i < hw; ++i) dd[i] = ga * is * gd[i];
            }
          });
          sink.accumulate(px, dx);
        }
      });
  return {std::move(out), id};
}

template <class S>
SoftmaxCeResult<S> softmax_ce(Tape<S>& tape, const Variable<S>& logits, const std::vector<int>& labels) {
  const Shape& ls = logits.value.shape();
  if (ls.size() != 2) throw std::invalid_argument("softmax_ce expects logits [B,N], got " + shape_str(ls));
  const std::int64_t b = ls[0], n = ls[1];
  if (static_cast<std::int64_t>(labels.size()) != b) {
    throw std::invalid_argument("softmax_ce: " + std::to_string(labels.size()) + " labels for batch " +
                                std::to_string(b));
  }
  for (int y : labels) {
    if (y < 0 || y >= n) {
      throw std::invalid_argument("softmax_ce label " + std::to_string(y) + " out of range [0," +
                                  std::to_string(n) + ")");
    }
  }
  Tensor<S> probs({b, n});
  S loss_acc = 0;
  const S* lp = logits.value.ptr();
  S* pp = probs.ptr();
  for (std::int64_t i = 0; i < b; ++i) {
    const S* row = lp + i * n;
    std::int64_t mi = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      if (row[j] > row[mi]) mi = j;
    }
    const S mx = row[mi];
    // log1p over the non-max terms keeps tiny losses accurate near saturation.
    S rest = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      if (j != mi) rest += std::exp(row[j] - mx);
    }
    const S lse = mx + std::log1p(rest);
    const S denom = S(1) + rest;
    for (std::int64_t j = 0; j < n; ++j) {
      pp[i * n + j] = std::exp(row[j] - mx) / denom;
    }
    loss_acc += lse - row[labels[static_cast<std::size_t>(i)]];
  }
  Tensor<S> loss_t = Tensor<S>::scalar(loss_acc / static_cast<S>(b));

  SoftmaxCeResult<S> result{Tape<S>::constant(loss_t), probs};
  if (!logits.tracked()) return result;
  const NodeId pl = logits.node;
  const Tensor<S> probs_c = probs;
  const std::vector<int> labels_c = labels;
  const NodeId id = tape.append("softmax_ce", {pl}, [pl, probs_c, labels_c, b, n](const Tensor<S>& g, GradientMap<S>& sink) {
    const S gs = g[0] / static_cast<S>(b);
    Tensor<S> dl({b, n});
    const S* pp2 = probs_c.ptr();
    S* dp = dl.ptr();
    for (std::int64_t i = 0; i < b; ++i) {
      const int y = labels_c[static_cast<std::size_t>(i)];
      for (std::int64_t j = 0; j < n; ++j) {
        S v = pp2[i * n + j];
        if (j == y) v -= S(1);
        dp[i * n + j] = gs * v;
      }
    }
    sink.accumulate(pl, dl);
  });
  result.loss.node = id;
  return result;
}

#define BLOCKTRAIN_INSTANTIATE(S)                                                                        \
  template Variable<S> add<S>(Tape<S>&, const Variable<S>&, const Variable<S>&);                        \
  template Variable<S> sub<S>(Tape<S>&, const Variable<S>&, const Variable<S>&);                        \
  template Variable<S> mul<S>(Tape<S>&, const Variable<S>&, const Variable<S>&);                        \
  template Variable<S> scale<S>(Tape<S>&, const Variable<S>&, S);                                       \
  template Variable<S> relu<S>(Tape<S>&, const Variable<S>&);                                           \
  template Variable<S> matmul<S>(Tape<S>&, const Variable<S>&, const Variable<S>&);                     \
  template Variable<S> sum<S>(Tape<S>&, const Variable<S>&);                                            \
  template Variable<S> mean<S>(Tape<S>&, const Variable<S>&);                                           \
  template Variable<S> dense<S>(Tape<S>&, const Variable<S>&, const Variable<S>&, const Variable<S>&);  \
  template Variable<S> conv2d<S>(Tape<S>&, const Variable<S>&, const Variable<S>&, const Variable<S>&,  \
                                 int, int);                                                             \
  template Variable<S> maxpool2d<S>(Tape<S>&, const Variable<S>&, int, int);                            \
  template Variable<S> gap<S>(Tape<S>&, const Variable<S>&);                                            \
  template Variable<S> residual_add<S>(Tape<S>&, const Variable<S>&, const Variable<S>&);               \
  template Variable<S> batchnorm<S>(Tape<S>&, const Variable<S>&, const Variable<S>&,                   \
                                    const Variable<S>&, Tensor<S>&, Tensor<S>&, bool, S, S);            \
  template SoftmaxCeResult<S> softmax_ce<S>(Tape<S>&, const Variable<S>&, const std::vector<int>&);

BLOCKTRAIN_INSTANTIATE(float)
BLOCKTRAIN_INSTANTIATE(double)
#undef BLOCKTRAIN_INSTANTIATE

}  // namespace op

template std::vector<int> argmax_rows<float>(const Tensor<float>&);
template std::vector<int> argmax_rows<double>(const Tensor<double>&);

}  // namespace blocktrain
