#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blocktrain {

using Shape = std::vector<std::int64_t>;

std::int64_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

// Intra-op worker count. Ops only ever split work per output element, so the
// numeric result is identical for any thread count.
void set_num_threads(int n);
int num_threads();

/// Dense row-major n-dimensional array. Immutable shape; throws
/// std::invalid_argument when data length and shape extents disagree.
template <class S>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);  // zero-filled
  Tensor(Shape shape, std::vector<S> data);

  static Tensor full(Shape shape, S value);
  static Tensor scalar(S value) { return Tensor({}, {value}); }
  static Tensor identity(std::int64_t n);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::int64_t dim(std::size_t axis) const;
  std::int64_t numel() const noexcept { return static_cast<std::int64_t>(data_.size()); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const S> data() const noexcept { return data_; }
  std::span<S> data() noexcept { return data_; }
  const S* ptr() const noexcept { return data_.data(); }
  S* ptr() noexcept { return data_.data(); }

  S operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
  S& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }

  // Row-major 2-d accessor; bounds unchecked in release builds.
  S at2(std::int64_t r, std::int64_t c) const { return data_[static_cast<std::size_t>(r * shape_[1] + c)]; }
  S& at2(std::int64_t r, std::int64_t c) { return data_[static_cast<std::size_t>(r * shape_[1] + c)]; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const noexcept;
  bool bitwise_equal(const Tensor& other) const noexcept;

 private:
  Shape shape_;
  std::vector<S> data_;
};

// NaN/Inf guard; active only in debug builds ("what" names the offending value).
template <class S>
void debug_check_finite(const Tensor<S>& t, const char* what);

// --- arithmetic, fixed accumulation order throughout ---

// [m,k] x [k,n] -> [m,n]; per output element the inner k loop runs ascending.
template <class S>
Tensor<S> matmul(const Tensor<S>& a, const Tensor<S>& b);

template <class S>
Tensor<S> transpose(const Tensor<S>& a);  // 2-d

template <class S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b);
template <class S>
Tensor<S> sub(const Tensor<S>& a, const Tensor<S>& b);
template <class S>
Tensor<S> mul(const Tensor<S>& a, const Tensor<S>& b);
template <class S>
Tensor<S> scale(const Tensor<S>& a, S c);
template <class S>
Tensor<S> relu(const Tensor<S>& a);

enum class ReduceOp { sum, mean, max };

// Reduces over `axes` (all axes when empty); reduced extents are removed from
// the result shape. Accumulation visits elements in ascending flat order.
template <class S>
Tensor<S> reduce(ReduceOp op, const Tensor<S>& a, std::span<const int> axes = {});

template <class S>
S sum_all(const Tensor<S>& a);

extern template class Tensor<float>;
extern template class Tensor<double>;

}  // namespace blocktrain
