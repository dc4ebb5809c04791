#pragma once

#include <string>
#include <vector>

namespace blocktrain {

enum class UnitKind { conv_group, residual_basic, residual_bottleneck };

struct UnitSpec {
  UnitKind kind = UnitKind::conv_group;
  int out_ch = 0;
  int mid_ch = 0;  // bottleneck reduction width
  int stride = 1;  // first conv of a residual unit
  bool pool_after = false;
  bool with_bn = false;
};

struct StemSpec {
  int out_ch = 0;
  bool pool_after = false;
  bool with_bn = false;
};

struct StageShape {
  int ch = 0;
  int hw = 0;
};

/// Symbolic network description: stem conv, the ordered unit list (the
/// partition atoms) and the gap+dense classifier implied by num_classes.
struct ArchitectureSpec {
  std::string name;
  int in_channels = 3;
  int input_hw = 32;
  int num_classes = 10;
  StemSpec stem;
  std::vector<UnitSpec> units;

  // Filled by validate(): output shape after the stem and after each unit.
  StageShape stem_out;
  std::vector<StageShape> unit_out;

  int unit_count() const { return static_cast<int>(units.size()); }
  StageShape final_out() const { return unit_out.empty() ? stem_out : unit_out.back(); }
};

/// Presets: vgg-small / resnet-small are desk-scale (8 units); vgg-19-like /
/// resnet-50-like reproduce the full unit counts for long runs.
ArchitectureSpec build_preset(const std::string& name, int num_classes, int input_hw, int in_channels);

// Symbolic shape propagation; throws std::invalid_argument on inconsistent
// channel/stride bookkeeping or pooling below 1x1.
void validate(ArchitectureSpec& spec);

std::string arch_to_text(const ArchitectureSpec& spec);
ArchitectureSpec arch_from_text(const std::string& text);

/// K contiguous, non-empty unit ranges covering all units exactly once;
/// sizes differ by at most one.
struct BlockPartition {
  int k = 0;
  std::vector<std::pair<int, int>> ranges;  // [begin, end) unit indices

  int block_of_unit(int unit) const;
};

// Remainder goes to the earlier blocks: the first (U mod K) blocks get
// ceil(U/K) units, the rest floor(U/K).
BlockPartition partition(int unit_count, int k);

std::string partition_to_text(const BlockPartition& p);
BlockPartition partition_from_text(const std::string& text);

}  // namespace blocktrain
