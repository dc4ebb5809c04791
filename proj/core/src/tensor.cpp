#include "blocktrain/tensor.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>

#include "parallel.hpp"

namespace blocktrain {

namespace {

std::atomic<int> g_num_threads{0};  // 0 = not yet resolved

[[noreturn]] void shape_fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::int64_t shape_numel(const Shape& shape) {
  std::int64_t n = 1;
  for (std::int64_t e : shape) {
    if (e < 0) shape_fail("negative extent in shape " + shape_str(shape));
    n *= e;
  }
  return n;
}

std::string shape_str(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

void set_num_threads(int n) { g_num_threads.store(n < 1 ? 1 : n); }

int num_threads() {
  int n = g_num_threads.load();
  if (n == 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    g_num_threads.store(n);
  }
  return n;
}

template <class S>
Tensor<S>::Tensor(Shape shape) : shape_(std::move(shape)) {
  data_.assign(static_cast<std::size_t>(shape_numel(shape_)), S(0));
}

template <class S>
Tensor<S>::Tensor(Shape shape, std::vector<S> data) : shape_(std::move(shape)), data_(std::move(data)) {
  const std::int64_t want = shape_numel(shape_);
  if (want != static_cast<std::int64_t>(data_.size())) {
    shape_fail("tensor data length " + std::to_string(data_.size()) + " does not match shape " +
               shape_str(shape_) + " (expected " + std::to_string(want) + ")");
  }
}

template <class S>
Tensor<S> Tensor<S>::full(Shape shape, S value) {
  Tensor t(std::move(shape));
  for (S& v : t.data_) v = value;
  return t;
}

template <class S>
Tensor<S> Tensor<S>::identity(std::int64_t n) {
  Tensor t({n, n});
  for (std::int64_t i = 0; i < n; ++i) t.data_[static_cast<std::size_t>(i * n + i)] = S(1);
  return t;
}

template <class S>
std::int64_t Tensor<S>::dim(std::size_t axis) const {
  if (axis >= shape_.size()) shape_fail("axis " + std::to_string(axis) + " out of range for " + shape_str(shape_));
  return shape_[axis];
}

template <class S>
bool Tensor<S>::all_finite() const noexcept {
  for (S v : data_) {
    if (!std::isfinite(static_cast<double>(v))) return false;
  }
  return true;
}

template <class S>
bool Tensor<S>::bitwise_equal(const Tensor& other) const noexcept {
  if (shape_ != other.shape_) return false;
  if (data_.empty()) return true;
  return std::memcmp(data_.data(), other.data_.data(), data_.size() * sizeof(S)) == 0;
}

template <class S>
void debug_check_finite(const Tensor<S>& t, const char* what) {
#ifndef NDEBUG
  if (!t.all_finite()) throw std::runtime_error(std::string("non-finite values in ") + what);
#else
  (void)t;
  (void)what;
#endif
}

template <class S>
Tensor<S> matmul(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.shape()[1] != b.shape()[0]) {
    shape_fail("matmul shape mismatch: " + shape_str(a.shape()) + " x " + shape_str(b.shape()));
  }
  const std::int64_t m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
  Tensor<S> c({m, n});
  const S* ap = a.ptr();
  const S* bp = b.ptr();
  S* cp = c.ptr();
  // i,k,j loop order: vectorizable over j while each c[i,j] still accumulates
  // its k terms in ascending order.
  detail::parallel_for(m, [&](std::int64_t i) {
    S* crow = cp + i * n;
    const S* arow = ap + i * k;
    for (std::int64_t kk = 0; kk < k; ++kk) {
      const S av = arow[kk];
      const S* brow = bp + kk * n;
      for (std::int64_t j = 0; j < n; ++j) {
        crow[j] += av * brow[j];
      }
    }
  });
  return c;
}

template <class S>
Tensor<S> transpose(const Tensor<S>& a) {
  if (a.rank() != 2) shape_fail("transpose expects rank-2, got " + shape_str(a.shape()));
  const std::int64_t m = a.shape()[0], n = a.shape()[1];
  Tensor<S> t({n, m});
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      t.ptr()[j * m + i] = a.ptr()[i * n + j];
    }
  }
  return t;
}

namespace {

template <class S, class Fn>
Tensor<S> zip(const char* name, const Tensor<S>& a, const Tensor<S>& b, Fn fn) {
  if (!a.same_shape(b)) {
    shape_fail(std::string(name) + " shape mismatch: " + shape_str(a.shape()) + " vs " + shape_str(b.shape()));
  }
  Tensor<S> out(a.shape());
  const S* ap = a.ptr();
  const S* bp = b.ptr();
  S* op = out.ptr();
  const std::int64_t n = a.numel();
  for (std::int64_t i = 0; i < n; ++i) op[i] = fn(ap[i], bp[i]);
  return out;
}

}  // namespace

template <class S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b) {
  return zip("add", a, b, [](S x, S y) { return x + y; });
}

template <class S>
Tensor<S> sub(const Tensor<S>& a, const Tensor<S>& b) {
  return zip("sub", a, b, [](S x, S y) { return x - y; });
}

template <class S>
Tensor<S> mul(const Tensor<S>& a, const Tensor<S>& b) {
  return zip("mul", a, b, [](S x, S y) { return x * y; });
}

template <class S>
Tensor<S> scale(const Tensor<S>& a, S c) {
  Tensor<S> out(a.shape());
  const S* ap = a.ptr();
  S* op = out.ptr();
  const std::int64_t n = a.numel();
  for (std::int64_t i = 0; i < n; ++i) op[i] = ap[i] * c;
  return out;
}

template <class S>
Tensor<S> relu(const Tensor<S>& a) {
  Tensor<S> out(a.shape());
  const S* ap = a.ptr();
  S* op = out.ptr();
  const std::int64_t n = a.numel();
  for (std::int64_t i = 0; i < n; ++i) op[i] = ap[i] > S(0) ? ap[i] : S(0);
  return out;
}

template <class S>
Tensor<S> reduce(ReduceOp op, const Tensor<S>& a, std::span<const int> axes) {
  const std::size_t rank = a.rank();
  std::vector<bool> reduced(rank, false);
  if (axes.empty()) {
    reduced.assign(rank, true);
  } else {
    for (int ax : axes) {
      if (ax < 0 || static_cast<std::size_t>(ax) >= rank) {
        shape_fail("reduce axis " + std::to_string(ax) + " invalid for " + shape_str(a.shape()));
      }
      if (reduced[static_cast<std::size_t>(ax)]) {
        shape_fail("duplicate reduce axis " + std::to_string(ax));
      }
      reduced[static_cast<std::size_t>(ax)] = true;
    }
  }

  Shape out_shape;
  std::int64_t reduce_count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    if (reduced[i]) {
      reduce_count *= a.shape()[i];
    } else {
      out_shape.push_back(a.shape()[i]);
    }
  }
  if (op == ReduceOp::max && reduce_count == 0) {
    shape_fail("max reduction over empty extent in " + shape_str(a.shape()));
  }

  Tensor<S> out(out_shape);
  if (op == ReduceOp::max) {
    for (S& v : out.data()) v = std::numeric_limits<S>::lowest();
  }

  // Strides of the input, split into kept/reduced index spaces.
  std::vector<std::int64_t> stride(rank, 1);
  for (std::size_t i = rank; i-- > 1;) stride[i - 1] = stride[i] * a.shape()[i];

  const std::int64_t out_n = out.numel();
  const S* ap = a.ptr();
  S* op_ptr = out.ptr();
  for (std::int64_t oi = 0; oi < out_n; ++oi) {
    // decode kept coordinates
    std::int64_t base = 0;
    {
      std::int64_t rem = oi;
      for (std::size_t i = rank; i-- > 0;) {
        if (reduced[i]) continue;
        const std::int64_t extent = a.shape()[i];
        base += (rem % extent) * stride[i];
        rem /= extent;
      }
    }
    S acc = op == ReduceOp::max ? std::numeric_limits<S>::lowest() : S(0);
    // walk reduced coordinates in ascending flat order
    for (std::int64_t r = 0; r < reduce_count; ++r) {
      std::int64_t off = 0;
      std::int64_t rem = r;
      for (std::size_t i = rank; i-- > 0;) {
        if (!reduced[i]) continue;
        const std::int64_t extent = a.shape()[i];
        off += (rem % extent) * stride[i];
        rem /= extent;
      }
      const S v = ap[base + off];
      if (op == ReduceOp::max) {
        if (v > acc) acc = v;
      } else {
        acc += v;
      }
    }
    if (op == ReduceOp::mean) acc /= static_cast<S>(reduce_count);
    op_ptr[oi] = acc;
  }
  return out;
}

template <class S>
S sum_all(const Tensor<S>& a) {
  S acc = 0;
  for (S v : a.data()) acc += v;
  return acc;
}

template class Tensor<float>;
template class Tensor<double>;

#define BLOCKTRAIN_INSTANTIATE(S)                                            \
  template void debug_check_finite<S>(const Tensor<S>&, const char*);       \
  template Tensor<S> matmul<S>(const Tensor<S>&, const Tensor<S>&);         \
  template Tensor<S> transpose<S>(const Tensor<S>&);                        \
  template Tensor<S> add<S>(const Tensor<S>&, const Tensor<S>&);            \
  template Tensor<S> sub<S>(const Tensor<S>&, const Tensor<S>&);            \
  template Tensor<S> mul<S>(const Tensor<S>&, const Tensor<S>&);            \
  template Tensor<S> scale<S>(const Tensor<S>&, S);                         \
  template Tensor<S> relu<S>(const Tensor<S>&);                             \
  template Tensor<S> reduce<S>(ReduceOp, const Tensor<S>&, std::span<const int>); \
  template S sum_all<S>(const Tensor<S>&);

BLOCKTRAIN_INSTANTIATE(float)
BLOCKTRAIN_INSTANTIATE(double)
#undef BLOCKTRAIN_INSTANTIATE

}  // namespace blocktrain
