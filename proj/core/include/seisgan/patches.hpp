#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seisgan/volume.hpp"

namespace seisgan {

// One co-located training example: ground truth x, degraded input z, and
// (when conditional) the conditioning channels c, all sharing spatial dims.
struct PatchPair {
  Volume truth;
  Volume degraded;
  std::optional<ConditionField> condition;
  std::uint32_t source_id = 0;
  Dims offset;
};

// Regular-grid patches at the given stride along every axis; trailing cells
// that do not fit a full patch are dropped. Optionally shuffled with a
// seeded permutation.
std::vector<PatchPair> extract_patches(const Volume& truth, const Volume& degraded,
                                       const ConditionField* condition, const Dims& patch_dims,
                                       const Dims& stride, std::uint64_t seed, bool shuffle,
                                       std::uint32_t source_id = 0);

}  // namespace seisgan
