#pragma once

#include "blocktrain/arch.hpp"
#include "blocktrain/layers.hpp"

namespace blocktrain {

/// Materialized network: stem + units + output-layer classifier.
template <class S>
struct Model {
  ArchitectureSpec spec;  // validated
  Unit<S> stem;
  std::vector<Unit<S>> units;
  Head<S> classifier;
};

template <class S>
Model<S> build_model(const ArchitectureSpec& spec, Rng& rng);

/// Model plus a block partition and one auxiliary head per block. The heads
/// are training-time taps; the classifier stays the only test-time output.
template <class S>
struct DecoupledModel {
  Model<S> model;
  BlockPartition partition;
  std::vector<Head<S>> heads;  // heads[l] taps the output of block l

  int block_count() const { return partition.k; }
};

template <class S>
DecoupledModel<S> attach_aux(Model<S> model, const BlockPartition& partition, Rng& rng);

// Trainable parameters in deterministic order (stem, units, classifier).
template <class S>
std::vector<ParamRef<S>> model_params(Model<S>& m);

// Parameters owned by one block stage: its unit range (plus the stem for
// block 0) and its auxiliary head.
template <class S>
std::vector<ParamRef<S>> block_stage_params(DecoupledModel<S>& m, int block);

// The output layer: the classifier's dense weights and bias.
template <class S>
std::vector<ParamRef<S>> output_layer_params(DecoupledModel<S>& m);

// Eval-mode logits through stem, units and classifier (no gradient recording).
template <class S>
Tensor<S> model_logits_eval(Model<S>& m, const Tensor<S>& images);

// Train/eval forward through the trunk only, used by tests that compare the
// decoupled forward against the plain model.
template <class S>
Tensor<S> trunk_output_eval(Model<S>& m, const Tensor<S>& images);

}  // namespace blocktrain
