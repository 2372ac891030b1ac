#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seisgan/training.hpp"

namespace seisgan {

enum class HpScale { Linear, Log, Integer };

struct HpRange {
  double lo = 0.0;
  double hi = 0.0;
  HpScale scale = HpScale::Linear;
};

// Per-hyperparameter ranges plus the categorical fusion choices. Network
// base channel widths and the condition mode are fixed per space.
struct SearchSpace {
  int rank = 2;
  HpRange generator_depth{16, 40, HpScale::Integer};
  HpRange discriminator_depth{6, 18, HpScale::Integer};
  HpRange generator_lr{5e-7, 1e-3, HpScale::Log};
  HpRange discriminator_lr{5e-5, 5e-2, HpScale::Log};
  HpRange adversarial_weight{1e-5, 0.1, HpScale::Log};
  HpRange batch_size{6, 12, HpScale::Integer};
  std::vector<FusionType> fusion_types{FusionType::Concat, FusionType::Dot};
  std::vector<FusionPosition> fusion_positions{FusionPosition::Early, FusionPosition::Mid,
                                               FusionPosition::Late};
  ConditionMode condition_mode = ConditionMode::Probabilistic;
  int generator_base = 64;
  int discriminator_base = 64;
  std::int64_t eval_every = 50;

  void validate() const;
};

SearchSpace search_space_from_json(const std::string& text);
std::string search_space_to_json(const SearchSpace& space);

// One draw from a range: uniform (linear), exp-uniform (log), or inclusive
// uniform integer.
double sample_hp(const HpRange& range, Rng& rng);

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  TrainConfig config;
  double ssim = 0.0;
  double psnr_db = 0.0;
};

// Random search: trials i.i.d. configs, each trained for budget_steps, ranked
// by held-out SSIM descending with ties broken by trial index. Deterministic
// given the seed.
std::vector<TrialResult> hpsearch(const SearchSpace& space, int trials,
                                  std::int64_t budget_steps,
                                  const std::vector<PatchPair>& dataset, std::uint64_t seed);

std::string trials_to_json(const std::vector<TrialResult>& trials);

}  // namespace seisgan
