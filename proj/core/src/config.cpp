#include "seisgan/config.hpp"

#include <set>

#include "json.hpp"

namespace seisgan {

using nlohmann::json;

const char* to_string(ConditionMode mode) {
  switch (mode) {
    case ConditionMode::None: return "none";
    case ConditionMode::Deterministic: return "deterministic";
    default: return "probabilistic";
  }
}

ConditionMode condition_mode_from_string(const std::string& s) {
  if (s == "none") return ConditionMode::None;
  if (s == "deterministic") return ConditionMode::Deterministic;
  if (s == "probabilistic") return ConditionMode::Probabilistic;
  throw ConfigError("unknown condition mode '" + s +
                    "' (expected none|deterministic|probabilistic)");
}

void TrainConfig::validate() const {
  if (rank != 2 && rank != 3) {
    throw ConfigError("rank must be 2 or 3, got " + std::to_string(rank));
  }
  if (generator_depth < 1 || discriminator_depth < 1) {
    throw ConfigError("network depths must be positive");
  }
  if (generator_base < 1 || discriminator_base < 1) {
    throw ConfigError("base channel counts must be positive");
  }
  if ((condition_mode == ConditionMode::None) == fusion.has_value()) {
    throw ConfigError(fusion ? "fusion requires a condition mode other than 'none'"
                             : "conditional training requires a fusion spec");
  }
  if (!(generator_lr > 0.0) || !(discriminator_lr > 0.0)) {
    throw ConfigError("learning rates must be positive");
  }
  if (!(adversarial_weight > 0.0)) {
    throw ConfigError("adversarial weight must be positive");
  }
  if (batch_size < 1) {
    throw ConfigError("batch size must be positive");
  }
  if (total_steps < 0) {
    throw ConfigError("total steps must be non-negative");
  }
  if (eval_every < 1) {
    throw ConfigError("eval_every must be positive");
  }
}

NetworkSpec TrainConfig::generator_spec(int condition_channels) const {
  NetworkSpec spec;
  spec.role = Role::Generator;
  spec.rank = rank;
  spec.residual_depth = generator_depth;
  spec.base_channels = generator_base;
  spec.condition_channels = condition_channels;
  spec.fusion = fusion;
  return spec;
}

NetworkSpec TrainConfig::discriminator_spec(int condition_channels) const {
  NetworkSpec spec;
  spec.role = Role::Discriminator;
  spec.rank = rank;
  spec.residual_depth = discriminator_depth;
  spec.base_channels = discriminator_base;
  spec.condition_channels = condition_channels;
  spec.fusion = fusion;
  return spec;
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key '" + (path.empty() ? key : path + "." + key) + "'");
    }
  }
}

const json& require_key(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing config key '" + (path.empty() ? key : path + "." + key) + "'");
  }
  return *it;
}

template <class T>
T get_as(const json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid value for config key '" + path + "'");
  }
}

}  // namespace

TrainConfig train_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  reject_unknown_keys(j, {"rank", "generator", "discriminator", "condition_mode", "fusion",
                          "generator_lr", "discriminator_lr", "adversarial_weight", "batch_size",
                          "total_steps", "eval_every", "seed"},
                      "");

  TrainConfig c;
  c.rank = get_as<int>(require_key(j, "rank", ""), "rank");

  const json& gen = require_key(j, "generator", "");
  reject_unknown_keys(gen, {"residual_depth", "base_channels"}, "generator");
  c.generator_depth =
      get_as<int>(require_key(gen, "residual_depth", "generator"), "generator.residual_depth");
  if (gen.contains("base_channels")) {
    c.generator_base = get_as<int>(gen["base_channels"], "generator.base_channels");
  }

  const json& disc = require_key(j, "discriminator", "");
  reject_unknown_keys(disc, {"residual_depth", "base_channels"}, "discriminator");
  c.discriminator_depth = get_as<int>(require_key(disc, "residual_depth", "discriminator"),
                                      "discriminator.residual_depth");
  if (disc.contains("base_channels")) {
    c.discriminator_base = get_as<int>(disc["base_channels"], "discriminator.base_channels");
  }

  c.condition_mode = condition_mode_from_string(
      get_as<std::string>(require_key(j, "condition_mode", ""), "condition_mode"));

  const json& fusion = require_key(j, "fusion", "");
  if (!fusion.is_null()) {
    reject_unknown_keys(fusion, {"type", "position"}, "fusion");
    FusionSpec f;
    f.type = fusion_type_from_string(
        get_as<std::string>(require_key(fusion, "type", "fusion"), "fusion.type"));
    f.position = fusion_position_from_string(
        get_as<std::string>(require_key(fusion, "position", "fusion"), "fusion.position"));
    c.fusion = f;
  }

  c.generator_lr = get_as<double>(require_key(j, "generator_lr", ""), "generator_lr");
  c.discriminator_lr =
      get_as<double>(require_key(j, "discriminator_lr", ""), "discriminator_lr");
  c.adversarial_weight =
      get_as<double>(require_key(j, "adversarial_weight", ""), "adversarial_weight");
  c.batch_size = get_as<int>(require_key(j, "batch_size", ""), "batch_size");
  c.total_steps = get_as<std::int64_t>(require_key(j, "total_steps", ""), "total_steps");
  if (j.contains("eval_every")) {
    c.eval_every = get_as<std::int64_t>(j["eval_every"], "eval_every");
  }
  c.seed = get_as<std::uint64_t>(require_key(j, "seed", ""), "seed");

  c.validate();
  return c;
}

std::string train_config_to_json(const TrainConfig& config) {
  json j;
  j["rank"] = config.rank;
  j["generator"] = {{"residual_depth", config.generator_depth},
                    {"base_channels", config.generator_base}};
  j["discriminator"] = {{"residual_depth", config.discriminator_depth},
                        {"base_channels", config.discriminator_base}};
  j["condition_mode"] = to_string(config.condition_mode);
  if (config.fusion) {
    j["fusion"] = {{"type", to_string(config.fusion->type)},
                   {"position", to_string(config.fusion->position)}};
  } else {
    j["fusion"] = nullptr;
  }
  j["generator_lr"] = config.generator_lr;
  j["discriminator_lr"] = config.discriminator_lr;
  j["adversarial_weight"] = config.adversarial_weight;
  j["batch_size"] = config.batch_size;
  j["total_steps"] = config.total_steps;
  j["eval_every"] = config.eval_every;
  j["seed"] = config.seed;
  return j.dump(2) + "\n";
}

}  // namespace seisgan
