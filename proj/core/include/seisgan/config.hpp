#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "seisgan/network.hpp"

namespace seisgan {

enum class ConditionMode { None, Deterministic, Probabilistic };

const char* to_string(ConditionMode mode);
ConditionMode condition_mode_from_string(const std::string& s);

// Training run description. Parsed from a strict JSON document: unknown keys
// are rejected with their field path.
struct TrainConfig {
  int rank = 2;
  int generator_depth = 2;
  int generator_base = 64;
  int discriminator_depth = 1;
  int discriminator_base = 64;
  ConditionMode condition_mode = ConditionMode::None;
  std::optional<FusionSpec> fusion;
  double generator_lr = 1e-4;
  double discriminator_lr = 1e-4;
  double adversarial_weight = 1e-3;
  int batch_size = 8;
  std::int64_t total_steps = 0;
  std::int64_t eval_every = 100;
  std::uint64_t seed = 0;

  void validate() const;

  // condition_channels is resolved from the dataset (K for deterministic
  // one-hot conditions, 1 for probabilistic, 0 for none).
  NetworkSpec generator_spec(int condition_channels) const;
  NetworkSpec discriminator_spec(int condition_channels) const;

  bool operator==(const TrainConfig&) const = default;
};

TrainConfig train_config_from_json(const std::string& text);
std::string train_config_to_json(const TrainConfig& config);

}  // namespace seisgan
