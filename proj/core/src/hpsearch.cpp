#include "seisgan/hpsearch.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace seisgan {

using nlohmann::json;

namespace {

void validate_range(const HpRange& r, const std::string& name) {
  if (!(r.lo <= r.hi)) {
    throw ConfigError("search range '" + name + "' has lo > hi");
  }
  if (r.scale == HpScale::Log && !(r.lo > 0.0)) {
    throw ConfigError("log-scaled range '" + name + "' must be strictly positive");
  }
  if (r.scale == HpScale::Integer &&
      (std::floor(r.lo) != r.lo || std::floor(r.hi) != r.hi)) {
    throw ConfigError("integer range '" + name + "' has non-integer bounds");
  }
}

const char* to_string(HpScale scale) {
  switch (scale) {
    case HpScale::Linear: return "linear";
    case HpScale::Log: return "log";
    default: return "integer";
  }
}

HpScale scale_from_string(const std::string& s) {
  if (s == "linear") return HpScale::Linear;
  if (s == "log") return HpScale::Log;
  if (s == "integer") return HpScale::Integer;
  throw ConfigError("unknown scale '" + s + "' (expected linear|log|integer)");
}

json range_to_json(const HpRange& r) {
  return json{{"min", r.lo}, {"max", r.hi}, {"scale", to_string(r.scale)}};
}

HpRange range_from_json(const json& j, const std::string& name) {
  if (!j.is_object()) {
    throw ConfigError("search range '" + name + "' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "min" && key != "max" && key != "scale") {
      throw ConfigError("unknown key '" + name + "." + key + "'");
    }
  }
  HpRange r;
  try {
    r.lo = j.at("min").get<double>();
    r.hi = j.at("max").get<double>();
    r.scale = scale_from_string(j.at("scale").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError("invalid search range '" + name + "': " + e.what());
  }
  return r;
}

}  // namespace

void SearchSpace::validate() const {
  if (rank != 2 && rank != 3) {
    throw ConfigError("search space rank must be 2 or 3");
  }
  validate_range(generator_depth, "generator_depth");
  validate_range(discriminator_depth, "discriminator_depth");
  validate_range(generator_lr, "generator_lr");
  validate_range(discriminator_lr, "discriminator_lr");
  validate_range(adversarial_weight, "adversarial_weight");
  validate_range(batch_size, "batch_size");
  if (condition_mode != ConditionMode::None) {
    if (fusion_types.empty() || fusion_positions.empty()) {
      throw ConfigError("conditional search space needs fusion type and position choices");
    }
  }
  if (generator_base < 1 || discriminator_base < 1) {
    throw ConfigError("base channels must be positive");
  }
  if (eval_every < 1) {
    throw ConfigError("eval_every must be positive");
  }
}

SearchSpace search_space_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid search space JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("search space must be a JSON object");
  }
  const std::set<std::string> allowed{
      "rank",          "generator_depth", "discriminator_depth", "generator_lr",
      "discriminator_lr", "adversarial_weight", "batch_size",    "fusion_types",
      "fusion_positions", "condition_mode",  "generator_base",   "discriminator_base",
      "eval_every"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown search space key '" + key + "'");
    }
  }
  SearchSpace s;
  try {
    s.rank = j.at("rank").get<int>();
    s.generator_depth = range_from_json(j.at("generator_depth"), "generator_depth");
    s.discriminator_depth = range_from_json(j.at("discriminator_depth"), "discriminator_depth");
    s.generator_lr = range_from_json(j.at("generator_lr"), "generator_lr");
    s.discriminator_lr = range_from_json(j.at("discriminator_lr"), "discriminator_lr");
    s.adversarial_weight = range_from_json(j.at("adversarial_weight"), "adversarial_weight");
    s.batch_size = range_from_json(j.at("batch_size"), "batch_size");
    s.condition_mode = condition_mode_from_string(j.at("condition_mode").get<std::string>());
    s.fusion_types.clear();
    for (const auto& t : j.at("fusion_types")) {
      s.fusion_types.push_back(fusion_type_from_string(t.get<std::string>()));
    }
    s.fusion_positions.clear();
    for (const auto& p : j.at("fusion_positions")) {
      s.fusion_positions.push_back(fusion_position_from_string(p.get<std::string>()));
    }
    if (j.contains("generator_base")) s.generator_base = j["generator_base"].get<int>();
    if (j.contains("discriminator_base")) s.discriminator_base = j["discriminator_base"].get<int>();
    if (j.contains("eval_every")) s.eval_every = j["eval_every"].get<std::int64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid search space JSON: ") + e.what());
  }
  s.validate();
  return s;
}

std::string search_space_to_json(const SearchSpace& space) {
  json j;
  j["rank"] = space.rank;
  j["generator_depth"] = range_to_json(space.generator_depth);
  j["discriminator_depth"] = range_to_json(space.discriminator_depth);
  j["generator_lr"] = range_to_json(space.generator_lr);
  j["discriminator_lr"] = range_to_json(space.discriminator_lr);
  j["adversarial_weight"] = range_to_json(space.adversarial_weight);
  j["batch_size"] = range_to_json(space.batch_size);
  json types = json::array();
  for (FusionType t : space.fusion_types) types.push_back(to_string(t));
  j["fusion_types"] = types;
  json positions = json::array();
  for (FusionPosition p : space.fusion_positions) positions.push_back(to_string(p));
  j["fusion_positions"] = positions;
  j["condition_mode"] = to_string(space.condition_mode);
  j["generator_base"] = space.generator_base;
  j["discriminator_base"] = space.discriminator_base;
  j["eval_every"] = space.eval_every;
  return j.dump(2) + "\n";
}

double sample_hp(const HpRange& range, Rng& rng) {
  switch (range.scale) {
    case HpScale::Linear:
      return rng.uniform(range.lo, range.hi);
    case HpScale::Log:
      return rng.log_uniform(range.lo, range.hi);
    default:
      return static_cast<double>(
          rng.uniform_int(static_cast<std::int64_t>(range.lo),
                          static_cast<std::int64_t>(range.hi)));
  }
}

std::vector<TrialResult> hpsearch(const SearchSpace& space, int trials,
                                  std::int64_t budget_steps,
                                  const std::vector<PatchPair>& dataset, std::uint64_t seed) {
  space.validate();
  if (trials < 1) {
    throw ConfigError("trial count must be positive");
  }
  if (budget_steps < 1) {
    throw ConfigError("budget steps must be positive");
  }

  Rng rng(seed);
  std::vector<TrialResult> results;
  results.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    TrialResult trial;
    trial.trial = t;
    TrainConfig& c = trial.config;
    c.rank = space.rank;
    c.generator_depth = static_cast<int>(sample_hp(space.generator_depth, rng));
    c.discriminator_depth = static_cast<int>(sample_hp(space.discriminator_depth, rng));
    c.generator_lr = sample_hp(space.generator_lr, rng);
    c.discriminator_lr = sample_hp(space.discriminator_lr, rng);
    c.adversarial_weight = sample_hp(space.adversarial_weight, rng);
    c.batch_size = static_cast<int>(sample_hp(space.batch_size, rng));
    c.condition_mode = space.condition_mode;
    if (space.condition_mode != ConditionMode::None) {
      FusionSpec f;
      f.type = space.fusion_types[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(space.fusion_types.size()) - 1))];
      f.position = space.fusion_positions[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(space.fusion_positions.size()) - 1))];
      c.fusion = f;
    }
    c.generator_base = space.generator_base;
    c.discriminator_base = space.discriminator_base;
    c.eval_every = space.eval_every;
    c.total_steps = budget_steps;
    c.seed = rng.raw();
    trial.seed = c.seed;
    results.push_back(std::move(trial));
  }

  // All configs are drawn before any training so the sampling stream is
  // independent of trial outcomes.
  for (TrialResult& trial : results) {
    Trainer trainer(trial.config, dataset);
    trainer.run(budget_steps, nullptr);
    const EvalResult eval = trainer.evaluate_holdout();
    trial.ssim = eval.ssim;
    trial.psnr_db = eval.psnr_db;
  }

  std::stable_sort(results.begin(), results.end(),
                   [](const TrialResult& a, const TrialResult& b) { return a.ssim > b.ssim; });
  return results;
}

std::string trials_to_json(const std::vector<TrialResult>& trials) {
  json arr = json::array();
  for (const TrialResult& t : trials) {
    json e;
    e["trial"] = t.trial;
    e["seed"] = t.seed;
    e["config"] = json::parse(train_config_to_json(t.config));
    e["ssim"] = t.ssim;
    e["psnr_db"] = t.psnr_db;
    arr.push_back(e);
  }
  return arr.dump(2) + "\n";
}

}  // namespace seisgan
