#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seisgan/config.hpp"
#include "seisgan/network.hpp"
#include "seisgan/optim.hpp"
#include "seisgan/patches.hpp"
#include "seisgan/rng.hpp"

namespace seisgan {

// Full training state at one step. Reloading and resuming reproduces the
// exact trajectory of an uninterrupted run on the same platform.
struct Checkpoint {
  TrainConfig config;
  std::int64_t step = 0;
  int condition_channels = 0;
  ModelParams<float> generator;
  ModelParams<float> discriminator;
  AdamState<float> generator_opt;
  AdamState<float> discriminator_opt;
  std::string sampler_state;
};

struct StepRecord {
  std::int64_t step = 0;
  float d_loss = 0.0f;
  float g_loss = 0.0f;
  std::optional<double> eval_psnr;
  std::optional<double> eval_ssim;
};

using History = std::vector<StepRecord>;

std::string history_to_json(const History& history);

struct EvalResult {
  double psnr_db = 0.0;
  double ssim = 0.0;
};

// Seeded epoch sampler: a fresh permutation per epoch, batches drawn
// sequentially, reshuffling mid-batch when an epoch runs out.
class BatchSampler {
 public:
  BatchSampler(std::size_t count, std::uint64_t seed);
  std::vector<std::uint32_t> next(std::size_t batch_size);
  std::string save() const;
  static BatchSampler restore(const std::string& blob, std::size_t count);

 private:
  BatchSampler() : rng_(0) {}
  void reshuffle();

  Rng rng_;
  std::vector<std::uint32_t> permutation_;
  std::size_t cursor_ = 0;
};

// One minibatch of co-located (x, z, c) tensors.
struct Batch {
  Tensor<float> truth;
  Tensor<float> degraded;
  std::optional<Tensor<float>> condition;
};

// Alternating GAN training: per step one discriminator update (generator
// frozen) followed by one generator update (discriminator frozen), both
// with Adam. The last 10% of the patch sequence is held out for evaluation.
class Trainer {
 public:
  Trainer(const TrainConfig& config, const std::vector<PatchPair>& dataset);
  Trainer(const Checkpoint& checkpoint, const std::vector<PatchPair>& dataset);

  void run(std::int64_t steps, History* history = nullptr);

  Batch next_batch();
  float discriminator_update(const Batch& batch);
  float generator_update(const Batch& batch);

  EvalResult evaluate_holdout();

  Checkpoint checkpoint() const;
  std::int64_t step() const { return step_; }

  ModelParams<float>& generator() { return generator_; }
  ModelParams<float>& discriminator() { return discriminator_; }
  std::size_t train_count() const { return train_indices_.size(); }
  std::size_t holdout_count() const { return holdout_indices_.size(); }

 private:
  void split_dataset();
  Batch assemble(const std::vector<std::uint32_t>& indices) const;

  TrainConfig config_;
  const std::vector<PatchPair>* dataset_;
  int condition_channels_ = 0;
  std::vector<std::uint32_t> train_indices_;
  std::vector<std::uint32_t> holdout_indices_;
  ModelParams<float> generator_;
  ModelParams<float> discriminator_;
  AdamState<float> generator_opt_;
  AdamState<float> discriminator_opt_;
  BatchSampler sampler_;
  std::int64_t step_ = 0;
};

// Condition channel count implied by a dataset (0 when unconditional).
int dataset_condition_channels(const std::vector<PatchPair>& dataset,
                               ConditionMode mode);

Checkpoint train(const TrainConfig& config, const std::vector<PatchPair>& dataset,
                 History* history = nullptr);

Checkpoint resume(const Checkpoint& checkpoint, std::int64_t extra_steps,
                  const std::vector<PatchPair>& dataset, History* history = nullptr);

// Deep copy: fresh tensors, no shared state with the source.
ModelParams<float> clone_params(const ModelParams<float>& params);

// FNV-1a over the parameter value bytes, for alternation-invariant checks.
std::uint64_t params_checksum(const ModelParams<float>& params);

}  // namespace seisgan
