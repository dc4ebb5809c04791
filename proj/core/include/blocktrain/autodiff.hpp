#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "blocktrain/tensor.hpp"

namespace blocktrain {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// A forward value plus its position on a tape. node == kNoNode marks a
/// constant or detached leaf: it never receives or propagates gradient.
template <class S>
struct Variable {
  Tensor<S> value;
  NodeId node = kNoNode;

  bool tracked() const noexcept { return node != kNoNode; }
};

/// Stop-gradient: value preserved bitwise, gradient path severed.
template <class S>
Variable<S> detach(const Variable<S>& v) {
  return Variable<S>{v.value, kNoNode};
}

/// node-id -> gradient tensor. Absence of an entry means no tape path reached
/// that node; tests assert on this to prove gradient isolation.
template <class S>
class GradientMap {
 public:
  explicit GradientMap(std::size_t node_count) : grads_(node_count) {}

  bool has(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < grads_.size() && grads_[static_cast<std::size_t>(id)].has_value();
  }
  const Tensor<S>& at(NodeId id) const;
  void accumulate(NodeId id, const Tensor<S>& g);  // additive on fan-out
  std::size_t entry_count() const;

 private:
  std::vector<std::optional<Tensor<S>>> grads_;
};

/// Append-only record of the forward pass. Each node stores its parents and a
/// closure holding exactly the forward context its backward rule needs.
template <class S>
class Tape {
 public:
  using BackwardFn = std::function<void(const Tensor<S>& gout, GradientMap<S>& sink)>;

  // Tracked leaf (a parameter); gradients accumulate at its node id.
  Variable<S> leaf(Tensor<S> value);

  // Constant input; never tracked. No tape needed.
  static Variable<S> constant(Tensor<S> value) { return Variable<S>{std::move(value), kNoNode}; }

  // Records an interior node. Parents must already be on this tape.
  NodeId append(const char* tag, std::vector<NodeId> parents, BackwardFn backward);

  // Reverse sweep from a scalar loss; each node visited at most once, in
  // reverse topological (= reverse append) order.
  GradientMap<S> backward(const Variable<S>& loss) const;

  std::size_t size() const noexcept { return nodes_.size(); }
  const char* tag(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)).tag; }
  const std::vector<NodeId>& parents(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)).parents; }

 private:
  struct Node {
    const char* tag;
    std::vector<NodeId> parents;
    BackwardFn backward;  // empty for leaves
  };
  std::vector<Node> nodes_;
};

extern template class GradientMap<float>;
extern template class GradientMap<double>;
extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace blocktrain
