#include "blocktrain/autodiff.hpp"

#include <stdexcept>
#include <string>

namespace blocktrain {

template <class S>
const Tensor<S>& GradientMap<S>::at(NodeId id) const {
  if (!has(id)) throw std::out_of_range("no gradient entry for node " + std::to_string(id));
  return *grads_[static_cast<std::size_t>(id)];
}

template <class S>
void GradientMap<S>::accumulate(NodeId id, const Tensor<S>& g) {
  if (id < 0 || static_cast<std::size_t>(id) >= grads_.size()) {
    throw std::out_of_range("gradient node id " + std::to_string(id) + " out of range");
  }
  auto& slot = grads_[static_cast<std::size_t>(id)];
  if (!slot) {
    slot = g;
    return;
  }
  if (!slot->same_shape(g)) {
    throw std::invalid_argument("gradient shape mismatch at node " + std::to_string(id) + ": " +
                                shape_str(slot->shape()) + " vs " + shape_str(g.shape()));
  }
  S* acc = slot->ptr();
  const S* src = g.ptr();
  const std::int64_t n = g.numel();
  for (std::int64_t i = 0; i < n; ++i) acc[i] += src[i];
}

template <class S>
std::size_t GradientMap<S>::entry_count() const {
  std::size_t n = 0;
  for (const auto& g : grads_) {
    if (g) ++n;
  }
  return n;
}

template <class S>
Variable<S> Tape<S>::leaf(Tensor<S> value) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{"leaf", {}, nullptr});
  return Variable<S>{std::move(value), id};
}

template <class S>
NodeId Tape<S>::append(const char* tag, std::vector<NodeId> parents, BackwardFn backward) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  for (NodeId p : parents) {
    if (p < 0 || p >= id) {
      throw std::invalid_argument(std::string("tape node '") + tag + "' has invalid parent id " +
                                  std::to_string(p));
    }
  }
  nodes_.push_back(Node{tag, std::move(parents), std::move(backward)});
  return id;
}

template <class S>
GradientMap<S> Tape<S>::backward(const Variable<S>& loss) const {
  if (!loss.tracked() || static_cast<std::size_t>(loss.node) >= nodes_.size()) {
    throw std::invalid_argument("backward: loss is not on this tape");
  }
  if (loss.value.numel() != 1) {
    throw std::invalid_argument("backward: loss must be scalar, got shape " + shape_str(loss.value.shape()));
  }
  GradientMap<S> grads(nodes_.size());
  grads.accumulate(loss.node, Tensor<S>(loss.value.shape(), {S(1)}));
  for (NodeId id = loss.node; id >= 0; --id) {
    if (!grads.has(id)) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.backward) node.backward(grads.at(id), grads);
  }
  return grads;
}

template class GradientMap<float>;
template class GradientMap<double>;
template class Tape<float>;
template class Tape<double>;

}  // namespace blocktrain
