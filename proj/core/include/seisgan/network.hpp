#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seisgan/ops.hpp"
#include "seisgan/optim.hpp"
#include "seisgan/volume.hpp"

namespace seisgan {

enum class Role { Generator, Discriminator };
enum class FusionType { Concat, Dot };
enum class FusionPosition { Early, Mid, Late };

// Where and how conditioning channels join the network.
struct FusionSpec {
  FusionType type = FusionType::Concat;
  FusionPosition position = FusionPosition::Early;

  bool operator==(const FusionSpec&) const = default;
};

// Architecture description. Depth counts repeating residual blocks in the
// generator and repeating strided conv blocks in the discriminator.
struct NetworkSpec {
  Role role = Role::Generator;
  int rank = 2;  // spatial rank: 2 or 3
  int residual_depth = 1;
  int base_channels = 64;
  int condition_channels = 0;  // 0 = unconditional baseline
  std::optional<FusionSpec> fusion;

  void validate() const;

  bool operator==(const NetworkSpec&) const = default;
};

const char* to_string(Role role);
const char* to_string(FusionType type);
const char* to_string(FusionPosition position);
FusionType fusion_type_from_string(const std::string& s);
FusionPosition fusion_position_from_string(const std::string& s);

// A network's weights plus running batch-norm statistics. Parameter names
// are unique and their order is fixed by the builder, so state serializes
// deterministically.
template <class T>
struct ModelParams {
  NetworkSpec spec;
  NamedTensors<T> params;
  std::vector<std::pair<std::string, BnStats<T>>> bn;

  Tensor<T>& at(const std::string& name);
  const Tensor<T>& at(const std::string& name) const;
  bool has(const std::string& name) const;
  BnStats<T>& bn_at(const std::string& name);

  std::size_t parameter_count() const;
  void zero_grads();
};

// SRGAN-style generator without an upsampling stage: head conv9 + PReLU,
// residual_depth x [conv3-BN-PReLU-conv3-BN + skip], conv3-BN + global skip,
// tail conv9 + tanh. Same-padding stride-1 throughout, so output spatial
// dims always equal input dims.
template <class T>
ModelParams<T> build_generator(const NetworkSpec& spec, std::uint64_t seed);

// Head conv3 + LeakyReLU, residual_depth x [conv3 stride-2 (capped so no
// spatial extent falls below 4, channels doubling up to 8x base), BN,
// LeakyReLU], global average pool, dense 1024, LeakyReLU, dense 1, sigmoid.
template <class T>
ModelParams<T> build_discriminator(const NetworkSpec& spec, std::uint64_t seed);

template <class T>
Tensor<T> generator_forward(Tape<T>& tape, ModelParams<T>& net, const Tensor<T>& input,
                            const std::optional<Tensor<T>>& condition, BnMode mode);

template <class T>
Tensor<T> discriminator_forward(Tape<T>& tape, ModelParams<T>& net, const Tensor<T>& input,
                                const std::optional<Tensor<T>>& condition, BnMode mode);

// Runs the generator on one volume in inference mode. The condition must be
// present exactly when the spec is conditional.
Volume enhance(ModelParams<float>& generator, const Volume& degraded,
               const std::optional<ConditionField>& condition);

// Tensor packing helpers shared by training and inference.
Tensor<float> volume_to_tensor(const Volume& v);
Tensor<float> condition_to_tensor(const ConditionField& c);
Volume tensor_to_volume(const Tensor<float>& t, float dt_ms);

}  // namespace seisgan
