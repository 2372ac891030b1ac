#include "seisgan/training.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "seisgan/losses.hpp"
#include "seisgan/metrics.hpp"
#include "seisgan/rng.hpp"

namespace seisgan {

std::string history_to_json(const History& history) {
  nlohmann::json arr = nlohmann::json::array();
  for (const StepRecord& r : history) {
    nlohmann::json e;
    e["step"] = r.step;
    e["d_loss"] = r.d_loss;
    e["g_loss"] = r.g_loss;
    if (r.eval_psnr) {
      if (std::isinf(*r.eval_psnr)) {
        e["eval_psnr"] = "inf";
      } else {
        e["eval_psnr"] = *r.eval_psnr;
      }
    } else {
      e["eval_psnr"] = nullptr;
    }
    if (r.eval_ssim) {
      e["eval_ssim"] = *r.eval_ssim;
    } else {
      e["eval_ssim"] = nullptr;
    }
    arr.push_back(e);
  }
  return arr.dump(2) + "\n";
}

BatchSampler::BatchSampler(std::size_t count, std::uint64_t seed) : rng_(seed) {
  if (count == 0) {
    throw ContractError("batch sampler needs a non-empty index range");
  }
  permutation_.resize(count);
  for (std::size_t i = 0; i < count; ++i) permutation_[i] = static_cast<std::uint32_t>(i);
  reshuffle();
}

void BatchSampler::reshuffle() {
  for (std::size_t i = permutation_.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(permutation_[i - 1], permutation_[j]);
  }
  cursor_ = 0;
}

std::vector<std::uint32_t> BatchSampler::next(std::size_t batch_size) {
  std::vector<std::uint32_t> out;
  out.reserve(batch_size);
  while (out.size() < batch_size) {
    if (cursor_ == permutation_.size()) {
      reshuffle();
    }
    out.push_back(permutation_[cursor_++]);
  }
  return out;
}

std::string BatchSampler::save() const {
  std::ostringstream out;
  out << "v1\n" << cursor_ << '\n' << permutation_.size() << '\n';
  for (std::size_t i = 0; i < permutation_.size(); ++i) {
    if (i) out << ' ';
    out << permutation_[i];
  }
  out << '\n' << rng_.save() << '\n';
  return out.str();
}

BatchSampler BatchSampler::restore(const std::string& blob, std::size_t count) {
  std::istringstream in(blob);
  std::string version;
  std::size_t cursor = 0, n = 0;
  in >> version >> cursor >> n;
  if (in.fail() || version != "v1") {
    throw DataError("invalid batch sampler state");
  }
  if (n != count) {
    throw DataError("batch sampler covers " + std::to_string(n) + " patches, dataset has " +
                    std::to_string(count));
  }
  BatchSampler s;
  s.permutation_.resize(n);
  for (std::size_t i = 0; i < n; ++i) in >> s.permutation_[i];
  if (in.fail() || cursor > n) {
    throw DataError("invalid batch sampler state");
  }
  s.cursor_ = cursor;
  std::string rng_state, line;
  std::getline(in, line);  // consume end of permutation line
  std::getline(in, rng_state);
  s.rng_.restore(rng_state);
  return s;
}

int dataset_condition_channels(const std::vector<PatchPair>& dataset, ConditionMode mode) {
  if (mode == ConditionMode::None) return 0;
  const ConditionField::Mode want = mode == ConditionMode::Deterministic
                                        ? ConditionField::Mode::Deterministic
                                        : ConditionField::Mode::Probabilistic;
  int channels = -1;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& cond = dataset[i].condition;
    if (!cond) {
      throw ConfigError("patch " + std::to_string(i) + " has no condition field but the config "
                        "requires condition_mode " + to_string(mode));
    }
    if (cond->mode != want) {
      throw ConfigError("patch " + std::to_string(i) + " carries a " + to_string(cond->mode) +
                        " condition, config requires " + to_string(mode));
    }
    if (channels < 0) {
      channels = static_cast<int>(cond->channels);
    } else if (channels != static_cast<int>(cond->channels)) {
      throw ConfigError("condition channel counts differ across the dataset");
    }
  }
  return channels;
}

Trainer::Trainer(const TrainConfig& config, const std::vector<PatchPair>& dataset)
    : config_(config), dataset_(&dataset), sampler_(1, 0) {
  config_.validate();
  if (dataset.empty()) {
    throw ContractError("training dataset is empty");
  }
  condition_channels_ = dataset_condition_channels(dataset, config_.condition_mode);
  split_dataset();
  if (static_cast<std::size_t>(config_.batch_size) > train_indices_.size()) {
    throw ContractError("batch size " + std::to_string(config_.batch_size) +
                        " exceeds training split size " + std::to_string(train_indices_.size()));
  }
  generator_ = build_generator<float>(config_.generator_spec(condition_channels_),
                                      mix_seed(config_.seed, 1));
  discriminator_ = build_discriminator<float>(config_.discriminator_spec(condition_channels_),
                                              mix_seed(config_.seed, 2));
  generator_opt_.reset(generator_.params);
  discriminator_opt_.reset(discriminator_.params);
  sampler_ = BatchSampler(train_indices_.size(), mix_seed(config_.seed, 3));
}

namespace {

void validate_against_spec(const ModelParams<float>& stored, const NetworkSpec& spec) {
  ModelParams<float> expected = spec.role == Role::Generator
                                    ? build_generator<float>(spec, 0)
                                    : build_discriminator<float>(spec, 0);
  if (stored.params.size() != expected.params.size()) {
    throw DataError("checkpoint holds " + std::to_string(stored.params.size()) +
                    " tensors for the " + to_string(spec.role) + ", spec requires " +
                    std::to_string(expected.params.size()));
  }
  for (std::size_t i = 0; i < expected.params.size(); ++i) {
    const auto& [ename, etensor] = expected.params[i];
    const auto& [sname, stensor] = stored.params[i];
    if (ename != sname) {
      throw DataError("checkpoint tensor '" + sname + "' does not match expected '" + ename +
                      "'");
    }
    if (etensor.shape() != stensor.shape()) {
      throw DataError("checkpoint tensor '" + sname + "' has shape " +
                      shape_str(stensor.shape()) + ", spec requires " +
                      shape_str(etensor.shape()));
    }
  }
}

}  // namespace

Trainer::Trainer(const Checkpoint& checkpoint, const std::vector<PatchPair>& dataset)
    : config_(checkpoint.config), dataset_(&dataset), sampler_(1, 0) {
  config_.validate();
  if (dataset.empty()) {
    throw ContractError("training dataset is empty");
  }
  condition_channels_ = dataset_condition_channels(dataset, config_.condition_mode);
  if (condition_channels_ != checkpoint.condition_channels) {
    throw DataError("checkpoint was trained with " +
                    std::to_string(checkpoint.condition_channels) +
                    " condition channels, dataset provides " +
                    std::to_string(condition_channels_));
  }
  split_dataset();
  validate_against_spec(checkpoint.generator, config_.generator_spec(condition_channels_));
  validate_against_spec(checkpoint.discriminator,
                        config_.discriminator_spec(condition_channels_));
  generator_ = clone_params(checkpoint.generator);
  discriminator_ = clone_params(checkpoint.discriminator);
  generator_opt_ = checkpoint.generator_opt;
  discriminator_opt_ = checkpoint.discriminator_opt;
  step_ = checkpoint.step;
  sampler_ = BatchSampler::restore(checkpoint.sampler_state, train_indices_.size());
}

void Trainer::split_dataset() {
  const std::size_t n = dataset_->size();
  const Dims& ref_dims = (*dataset_)[0].truth.dims;
  for (std::size_t i = 0; i < n; ++i) {
    const PatchPair& p = (*dataset_)[i];
    if (p.truth.dims != ref_dims || p.degraded.dims != ref_dims) {
      throw ShapeError("patch " + std::to_string(i) + " dims differ from the first patch (" +
                       dims_str(ref_dims) + ")");
    }
  }
  if (static_cast<int>(ref_dims.size()) != config_.rank) {
    throw ShapeError("dataset rank " + std::to_string(ref_dims.size()) +
                     " does not match config rank " + std::to_string(config_.rank));
  }
  // Held-out split: the tail of the sequence as provided, before shuffling.
  const std::size_t holdout = std::max<std::size_t>(1, n / 10);
  if (holdout >= n) {
    throw ContractError("dataset too small to split a held-out set");
  }
  train_indices_.clear();
  holdout_indices_.clear();
  for (std::size_t i = 0; i < n - holdout; ++i) {
    train_indices_.push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = n - holdout; i < n; ++i) {
    holdout_indices_.push_back(static_cast<std::uint32_t>(i));
  }
}

Batch Trainer::assemble(const std::vector<std::uint32_t>& indices) const {
  const PatchPair& first = (*dataset_)[train_indices_.empty() ? 0 : train_indices_[0]];
  const Dims& dims = first.truth.dims;
  const int batch = static_cast<int>(indices.size());
  Shape vshape{batch, 1};
  for (std::uint32_t d : dims) vshape.push_back(static_cast<int>(d));
  const std::size_t cells = dims_size(dims);

  Batch out;
  std::vector<float> truth(static_cast<std::size_t>(batch) * cells);
  std::vector<float> degraded(static_cast<std::size_t>(batch) * cells);
  for (int b = 0; b < batch; ++b) {
    const PatchPair& p = (*dataset_)[train_indices_[indices[b]]];
    std::copy(p.truth.samples.begin(), p.truth.samples.end(), truth.begin() + b * cells);
    std::copy(p.degraded.samples.begin(), p.degraded.samples.end(),
              degraded.begin() + b * cells);
  }
  out.truth = Tensor<float>::from(vshape, std::move(truth));
  out.degraded = Tensor<float>::from(vshape, std::move(degraded));

  if (condition_channels_ > 0) {
    Shape cshape{batch, condition_channels_};
    for (std::uint32_t d : dims) cshape.push_back(static_cast<int>(d));
    const std::size_t block = static_cast<std::size_t>(condition_channels_) * cells;
    std::vector<float> cond(static_cast<std::size_t>(batch) * block);
    for (int b = 0; b < batch; ++b) {
      const PatchPair& p = (*dataset_)[train_indices_[indices[b]]];
      std::copy(p.condition->values.begin(), p.condition->values.end(),
                cond.begin() + b * block);
    }
    out.condition = Tensor<float>::from(cshape, std::move(cond));
  }
  return out;
}

Batch Trainer::next_batch() {
  return assemble(sampler_.next(static_cast<std::size_t>(config_.batch_size)));
}

float Trainer::discriminator_update(const Batch& batch) {
  generator_.zero_grads();
  discriminator_.zero_grads();

  // Generator is frozen: forward only, batch statistics, no stat updates.
  Tape<float> frozen = Tape<float>::inference();
  Tensor<float> fake =
      generator_forward(frozen, generator_, batch.degraded, batch.condition, BnMode::Frozen);

  Tape<float> tape;
  Tensor<float> d_real =
      discriminator_forward(tape, discriminator_, batch.truth, batch.condition, BnMode::Train);
  Tensor<float> d_fake =
      discriminator_forward(tape, discriminator_, fake, batch.condition, BnMode::Train);
  Tensor<float> loss = discriminator_loss(tape, d_real, d_fake);
  const float value = loss.item();
  if (!std::isfinite(value)) {
    throw TrainingError("non-finite loss", step_ + 1, "discriminator-loss");
  }
  tape.backward(loss);
  adam_step(discriminator_.params, discriminator_opt_,
            static_cast<float>(config_.discriminator_lr));
  return value;
}

float Trainer::generator_update(const Batch& batch) {
  generator_.zero_grads();
  discriminator_.zero_grads();

  Tape<float> tape;
  Tensor<float> fake =
      generator_forward(tape, generator_, batch.degraded, batch.condition, BnMode::Train);
  Tensor<float> d_fake =
      discriminator_forward(tape, discriminator_, fake, batch.condition, BnMode::Frozen);
  Tensor<float> content = content_loss(tape, batch.truth, fake);
  if (!std::isfinite(content.item())) {
    throw TrainingError("non-finite loss", step_ + 1, "content-loss");
  }
  Tensor<float> adversarial = generator_adversarial_loss(tape, d_fake);
  if (!std::isfinite(adversarial.item())) {
    throw TrainingError("non-finite loss", step_ + 1, "generator-adversarial-loss");
  }
  Tensor<float> loss = ops::add(
      tape, content,
      ops::affine(tape, adversarial, static_cast<float>(config_.adversarial_weight), 0.0f));
  const float value = loss.item();
  tape.backward(loss);
  adam_step(generator_.params, generator_opt_, static_cast<float>(config_.generator_lr));
  return value;
}

void Trainer::run(std::int64_t steps, History* history) {
  for (std::int64_t i = 1; i <= steps; ++i) {
    const Batch batch = next_batch();
    const float d_loss = discriminator_update(batch);
    const float g_loss = generator_update(batch);
    step_ += 1;
    StepRecord record;
    record.step = step_;
    record.d_loss = d_loss;
    record.g_loss = g_loss;
    if (step_ % config_.eval_every == 0 || i == steps) {
      const EvalResult eval = evaluate_holdout();
      record.eval_psnr = eval.psnr_db;
      record.eval_ssim = eval.ssim;
    }
    if (history) history->push_back(record);
  }
}

EvalResult Trainer::evaluate_holdout() {
  double psnr_acc = 0.0;
  double ssim_acc = 0.0;
  for (std::uint32_t idx : holdout_indices_) {
    const PatchPair& p = (*dataset_)[idx];
    std::optional<ConditionField> cond;
    if (condition_channels_ > 0) cond = p.condition;
    const Volume enhanced = enhance(generator_, p.degraded, cond);
    psnr_acc += psnr(p.truth, enhanced);
    ssim_acc += ssim(p.truth, enhanced);
  }
  const double n = static_cast<double>(holdout_indices_.size());
  return EvalResult{psnr_acc / n, ssim_acc / n};
}

Checkpoint Trainer::checkpoint() const {
  Checkpoint c;
  c.config = config_;
  c.step = step_;
  c.condition_channels = condition_channels_;
  c.generator = clone_params(generator_);
  c.discriminator = clone_params(discriminator_);
  c.generator_opt = generator_opt_;
  c.discriminator_opt = discriminator_opt_;
  c.sampler_state = sampler_.save();
  return c;
}

Checkpoint train(const TrainConfig& config, const std::vector<PatchPair>& dataset,
                 History* history) {
  Trainer trainer(config, dataset);
  trainer.run(config.total_steps, history);
  return trainer.checkpoint();
}

Checkpoint resume(const Checkpoint& checkpoint, std::int64_t extra_steps,
                  const std::vector<PatchPair>& dataset, History* history) {
  if (extra_steps < 0) {
    throw ContractError("extra steps must be non-negative");
  }
  Trainer trainer(checkpoint, dataset);
  trainer.run(extra_steps, history);
  return trainer.checkpoint();
}

ModelParams<float> clone_params(const ModelParams<float>& params) {
  ModelParams<float> out;
  out.spec = params.spec;
  out.params.reserve(params.params.size());
  for (const auto& [name, t] : params.params) {
    out.params.emplace_back(name, t.detached_copy());
  }
  out.bn = params.bn;
  return out;
}

std::uint64_t params_checksum(const ModelParams<float>& params) {
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](const void* data, std::size_t bytes) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      hash ^= p[i];
      hash *= 1099511628211ULL;
    }
  };
  for (const auto& [name, t] : params.params) {
    mix(name.data(), name.size());
    mix(t.values().data(), t.values().size() * sizeof(float));
  }
  return hash;
}

}  // namespace seisgan
