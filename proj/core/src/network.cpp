#include "seisgan/network.hpp"

#include <cmath>

#include "seisgan/rng.hpp"

namespace seisgan {

void NetworkSpec::validate() const {
  if (rank != 2 && rank != 3) {
    throw ParamError("network rank must be 2 or 3, got " + std::to_string(rank));
  }
  if (residual_depth < 1) {
    throw ParamError("residual_depth must be positive, got " + std::to_string(residual_depth));
  }
  if (base_channels < 1) {
    throw ParamError("base_channels must be positive, got " + std::to_string(base_channels));
  }
  if (condition_channels < 0) {
    throw ParamError("condition_channels must be non-negative");
  }
  if ((condition_channels == 0) == fusion.has_value()) {
    throw ParamError(fusion.has_value()
                         ? "fusion requires condition_channels > 0"
                         : "condition_channels > 0 requires a fusion spec");
  }
}

const char* to_string(Role role) {
  return role == Role::Generator ? "generator" : "discriminator";
}

const char* to_string(FusionType type) { return type == FusionType::Concat ? "concat" : "dot"; }

const char* to_string(FusionPosition position) {
  switch (position) {
    case FusionPosition::Early: return "early";
    case FusionPosition::Mid: return "mid";
    default: return "late";
  }
}

FusionType fusion_type_from_string(const std::string& s) {
  if (s == "concat") return FusionType::Concat;
  if (s == "dot") return FusionType::Dot;
  throw ConfigError("unknown fusion type '" + s + "' (expected concat|dot)");
}

FusionPosition fusion_position_from_string(const std::string& s) {
  if (s == "early") return FusionPosition::Early;
  if (s == "mid") return FusionPosition::Mid;
  if (s == "late") return FusionPosition::Late;
  throw ConfigError("unknown fusion position '" + s + "' (expected early|mid|late)");
}

template <class T>
Tensor<T>& ModelParams<T>::at(const std::string& name) {
  for (auto& [n, t] : params) {
    if (n == name) return t;
  }
  throw ContractError("no parameter named '" + name + "'");
}

template <class T>
const Tensor<T>& ModelParams<T>::at(const std::string& name) const {
  for (const auto& [n, t] : params) {
    if (n == name) return t;
  }
  throw ContractError("no parameter named '" + name + "'");
}

template <class T>
bool ModelParams<T>::has(const std::string& name) const {
  for (const auto& [n, t] : params) {
    if (n == name) return true;
  }
  return false;
}

template <class T>
BnStats<T>& ModelParams<T>::bn_at(const std::string& name) {
  for (auto& [n, s] : bn) {
    if (n == name) return s;
  }
  throw ContractError("no batchnorm layer named '" + name + "'");
}

template <class T>
std::size_t ModelParams<T>::parameter_count() const {
  std::size_t total = 0;
  for (const auto& [n, t] : params) total += t.size();
  return total;
}

template <class T>
void ModelParams<T>::zero_grads() {
  for (auto& [n, t] : params) t.zero_grad();
}

namespace {

int ipow(int base, int exp) {
  int r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

template <class T>
Tensor<T> he_normal(Rng& rng, Shape shape, std::size_t fan_in) {
  const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
  Tensor<T> t = Tensor<T>::zeros(std::move(shape));
  for (T& v : t.values()) v = static_cast<T>(rng.normal() * stddev);
  return t;
}

// Kernel sizes follow the SRGAN layout: wide 9-tap head/tail convs in the
// generator, 3-tap convs elsewhere, 1-tap convs for fusion projections.
constexpr int kHeadKernel = 9;
constexpr int kBodyKernel = 3;

struct FusionPlan {
  bool fused = false;
  FusionSpec spec;
  bool needs_projection = false;
  int projection_channels = 0;

  bool concat_early() const {
    return fused && spec.type == FusionType::Concat && spec.position == FusionPosition::Early;
  }
  bool concat_at(FusionPosition p) const {
    return fused && spec.type == FusionType::Concat && spec.position == p;
  }
};

FusionPlan make_fusion_plan(const NetworkSpec& spec) {
  FusionPlan plan;
  plan.fused = spec.fusion.has_value();
  if (!plan.fused) return plan;
  plan.spec = *spec.fusion;
  plan.needs_projection = !plan.concat_early();
  if (plan.needs_projection) {
    plan.projection_channels = plan.spec.position == FusionPosition::Early ? 1 : spec.base_channels;
  }
  return plan;
}

int discriminator_block_channels(int base, int block_index) {
  const int cap = base * 8;
  const int doubled = base * ipow(2, block_index);
  return doubled < cap ? doubled : cap;
}

}  // namespace

template <class T>
ModelParams<T> build_generator(const NetworkSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.role != Role::Generator) {
    throw ContractError("build_generator requires a generator spec");
  }
  Rng rng(seed);
  ModelParams<T> net;
  net.spec = spec;
  const int B = spec.base_channels;
  const int R = spec.rank;
  const FusionPlan plan = make_fusion_plan(spec);

  auto add = [&](std::string name, Tensor<T> t) {
    net.params.emplace_back(std::move(name), std::move(t));
  };
  auto conv_weight = [&](int cout, int cin, int k) {
    Shape s{cout, cin};
    for (int a = 0; a < R; ++a) s.push_back(k);
    return he_normal<T>(rng, std::move(s), static_cast<std::size_t>(cin) * ipow(k, R));
  };
  auto add_bn = [&](const std::string& stem) {
    add(stem + ".gamma", Tensor<T>::full({B}, T(1)));
    add(stem + ".beta", Tensor<T>::zeros({B}));
    BnStats<T> stats;
    stats.mean.assign(B, T(0));
    stats.var.assign(B, T(1));
    net.bn.emplace_back(stem, std::move(stats));
  };

  if (plan.needs_projection) {
    add("fusion.proj.w", conv_weight(plan.projection_channels, spec.condition_channels, 1));
    add("fusion.proj.b", Tensor<T>::zeros({plan.projection_channels}));
  }

  const int head_in = 1 + (plan.concat_early() ? spec.condition_channels : 0);
  add("head.w", conv_weight(B, head_in, kHeadKernel));
  add("head.b", Tensor<T>::zeros({B}));
  add("head.alpha", Tensor<T>::full({B}, T(0.25)));
  add("res.alpha", Tensor<T>::full({B}, T(0.25)));

  for (int i = 1; i <= spec.residual_depth; ++i) {
    const std::string stem = "block" + std::to_string(i);
    const int in1 = B + ((i == 1 && plan.concat_at(FusionPosition::Mid)) ? B : 0);
    add(stem + ".conv1.w", conv_weight(B, in1, kBodyKernel));
    add_bn(stem + ".bn1");
    add(stem + ".conv2.w", conv_weight(B, B, kBodyKernel));
    add_bn(stem + ".bn2");
  }

  const int post_in = B + (plan.concat_at(FusionPosition::Late) ? B : 0);
  add("post.w", conv_weight(B, post_in, kBodyKernel));
  add_bn("post.bn");

  add("tail.w", conv_weight(1, B, kHeadKernel));
  add("tail.b", Tensor<T>::zeros({1}));
  return net;
}

template <class T>
ModelParams<T> build_discriminator(const NetworkSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (spec.role != Role::Discriminator) {
    throw ContractError("build_discriminator requires a discriminator spec");
  }
  Rng rng(seed);
  ModelParams<T> net;
  net.spec = spec;
  const int B = spec.base_channels;
  const int R = spec.rank;
  const FusionPlan plan = make_fusion_plan(spec);

  auto add = [&](std::string name, Tensor<T> t) {
    net.params.emplace_back(std::move(name), std::move(t));
  };
  auto conv_weight = [&](int cout, int cin, int k) {
    Shape s{cout, cin};
    for (int a = 0; a < R; ++a) s.push_back(k);
    return he_normal<T>(rng, std::move(s), static_cast<std::size_t>(cin) * ipow(k, R));
  };

  if (plan.needs_projection) {
    add("fusion.proj.w", conv_weight(plan.projection_channels, spec.condition_channels, 1));
    add("fusion.proj.b", Tensor<T>::zeros({plan.projection_channels}));
  }

  const int head_in = 1 + (plan.concat_early() ? spec.condition_channels : 0);
  add("head.w", conv_weight(B, head_in, kBodyKernel));
  add("head.b", Tensor<T>::zeros({B}));

  // Mid and late fusion both hook in before the first strided block.
  const bool concat_body = plan.concat_at(FusionPosition::Mid) ||
                           plan.concat_at(FusionPosition::Late);
  int in_ch = B + (concat_body ? B : 0);
  for (int i = 1; i <= spec.residual_depth; ++i) {
    const std::string stem = "block" + std::to_string(i);
    const int out_ch = discriminator_block_channels(B, i);
    add(stem + ".w", conv_weight(out_ch, in_ch, kBodyKernel));
    add(stem + ".bn.gamma", Tensor<T>::full({out_ch}, T(1)));
    add(stem + ".bn.beta", Tensor<T>::zeros({out_ch}));
    BnStats<T> stats;
    stats.mean.assign(out_ch, T(0));
    stats.var.assign(out_ch, T(1));
    net.bn.emplace_back(stem + ".bn", std::move(stats));
    in_ch = out_ch;
  }

  constexpr int kDenseWidth = 1024;
  add("fc1.w", he_normal<T>(rng, {in_ch, kDenseWidth}, in_ch));
  add("fc1.b", Tensor<T>::zeros({kDenseWidth}));
  add("fc2.w", he_normal<T>(rng, {kDenseWidth, 1}, kDenseWidth));
  add("fc2.b", Tensor<T>::zeros({1}));
  return net;
}

namespace {

template <class T>
void check_forward_inputs(const ModelParams<T>& net, const Tensor<T>& input,
                          const std::optional<Tensor<T>>& condition) {
  const NetworkSpec& spec = net.spec;
  if (static_cast<int>(input.rank()) != spec.rank + 2) {
    throw ShapeError(std::string(to_string(spec.role)) + " expects rank-" +
                     std::to_string(spec.rank) + " spatial input [N,C,...], got " +
                     shape_str(input.shape()));
  }
  if (input.dim(1) != 1) {
    throw ShapeError(std::string(to_string(spec.role)) + " expects a single input channel, got " +
                     shape_str(input.shape()));
  }
  if (spec.fusion.has_value() != condition.has_value()) {
    throw ContractError(spec.fusion ? "conditional network called without a condition"
                                    : "unconditional network called with a condition");
  }
  if (condition) {
    if (condition->rank() != input.rank() || condition->dim(0) != input.dim(0)) {
      throw ShapeError("condition shape " + shape_str(condition->shape()) +
                       " does not pair with input " + shape_str(input.shape()));
    }
    if (condition->dim(1) != spec.condition_channels) {
      throw ShapeError("condition has " + std::to_string(condition->dim(1)) +
                       " channels, spec expects " + std::to_string(spec.condition_channels));
    }
    for (std::size_t a = 2; a < input.rank(); ++a) {
      if (condition->dim(a) != input.dim(a)) {
        throw ShapeError("condition spatial dims " + shape_str(condition->shape()) +
                         " do not match input " + shape_str(input.shape()));
      }
    }
  }
}

}  // namespace

template <class T>
Tensor<T> generator_forward(Tape<T>& tape, ModelParams<T>& net, const Tensor<T>& input,
                            const std::optional<Tensor<T>>& condition, BnMode mode) {
  if (net.spec.role != Role::Generator) {
    throw ContractError("generator_forward on a non-generator parameter set");
  }
  check_forward_inputs(net, input, condition);
  const NetworkSpec& spec = net.spec;
  const FusionPlan plan = make_fusion_plan(spec);

  auto project_condition = [&]() {
    return ops::conv(tape, *condition, net.at("fusion.proj.w"),
                     std::optional<Tensor<T>>(net.at("fusion.proj.b")), 1, Padding::Same);
  };

  Tensor<T> x = input;
  if (plan.fused && plan.spec.position == FusionPosition::Early) {
    x = plan.spec.type == FusionType::Concat ? ops::concat_channels(tape, x, *condition)
                                             : ops::mul(tape, x, project_condition());
  }

  x = ops::conv(tape, x, net.at("head.w"), std::optional<Tensor<T>>(net.at("head.b")), 1,
                Padding::Same);
  const Tensor<T> head_out = ops::prelu(tape, x, net.at("head.alpha"));

  Tensor<T> stream = head_out;
  std::optional<Tensor<T>> first_block_skip;
  if (plan.fused && plan.spec.position == FusionPosition::Mid) {
    if (plan.spec.type == FusionType::Concat) {
      // The residual path carries the unfused features; the conditioning
      // channels feed only the block's conv path.
      first_block_skip = stream;
      stream = ops::concat_channels(tape, stream, project_condition());
    } else {
      stream = ops::mul(tape, stream, project_condition());
    }
  }

  for (int i = 1; i <= spec.residual_depth; ++i) {
    const std::string stem = "block" + std::to_string(i);
    const Tensor<T> skip = (i == 1 && first_block_skip) ? *first_block_skip : stream;
    Tensor<T> h = ops::conv(tape, stream, net.at(stem + ".conv1.w"), std::optional<Tensor<T>>(), 1,
                            Padding::Same);
    h = ops::batchnorm(tape, h, net.at(stem + ".bn1.gamma"), net.at(stem + ".bn1.beta"), mode,
                       net.bn_at(stem + ".bn1"));
    h = ops::prelu(tape, h, net.at("res.alpha"));
    h = ops::conv(tape, h, net.at(stem + ".conv2.w"), std::optional<Tensor<T>>(), 1, Padding::Same);
    h = ops::batchnorm(tape, h, net.at(stem + ".bn2.gamma"), net.at(stem + ".bn2.beta"), mode,
                       net.bn_at(stem + ".bn2"));
    stream = ops::add(tape, h, skip);
  }

  if (plan.fused && plan.spec.position == FusionPosition::Late) {
    stream = plan.spec.type == FusionType::Concat
                 ? ops::concat_channels(tape, stream, project_condition())
                 : ops::mul(tape, stream, project_condition());
  }

  Tensor<T> post = ops::conv(tape, stream, net.at("post.w"), std::optional<Tensor<T>>(), 1, Padding::Same);
  post = ops::batchnorm(tape, post, net.at("post.bn.gamma"), net.at("post.bn.beta"), mode,
                        net.bn_at("post.bn"));
  post = ops::add(tape, post, head_out);

  Tensor<T> out = ops::conv(tape, post, net.at("tail.w"),
                            std::optional<Tensor<T>>(net.at("tail.b")), 1, Padding::Same);
  return ops::tanh_act(tape, out);
}

template <class T>
Tensor<T> discriminator_forward(Tape<T>& tape, ModelParams<T>& net, const Tensor<T>& input,
                                const std::optional<Tensor<T>>& condition, BnMode mode) {
  if (net.spec.role != Role::Discriminator) {
    throw ContractError("discriminator_forward on a non-discriminator parameter set");
  }
  check_forward_inputs(net, input, condition);
  const NetworkSpec& spec = net.spec;
  const FusionPlan plan = make_fusion_plan(spec);

  auto project_condition = [&]() {
    return ops::conv(tape, *condition, net.at("fusion.proj.w"),
                     std::optional<Tensor<T>>(net.at("fusion.proj.b")), 1, Padding::Same);
  };

  Tensor<T> x = input;
  if (plan.fused && plan.spec.position == FusionPosition::Early) {
    x = plan.spec.type == FusionType::Concat ? ops::concat_channels(tape, x, *condition)
                                             : ops::mul(tape, x, project_condition());
  }

  x = ops::conv(tape, x, net.at("head.w"), std::optional<Tensor<T>>(net.at("head.b")), 1,
                Padding::Same);
  x = ops::leaky_relu(tape, x, T(0.2));

  if (plan.fused && plan.spec.position != FusionPosition::Early) {
    x = plan.spec.type == FusionType::Concat ? ops::concat_channels(tape, x, project_condition())
                                             : ops::mul(tape, x, project_condition());
  }

  for (int i = 1; i <= spec.residual_depth; ++i) {
    const std::string stem = "block" + std::to_string(i);
    // Stride 2 only while every spatial extent stays at 4 or above.
    int stride = 2;
    for (std::size_t a = 2; a < x.rank(); ++a) {
      if ((x.dim(a) + 1) / 2 < 4) stride = 1;
    }
    x = ops::conv(tape, x, net.at(stem + ".w"), std::optional<Tensor<T>>(), stride, Padding::Same);
    x = ops::batchnorm(tape, x, net.at(stem + ".bn.gamma"), net.at(stem + ".bn.beta"), mode,
                       net.bn_at(stem + ".bn"));
    x = ops::leaky_relu(tape, x, T(0.2));
  }

  x = ops::global_avg_pool(tape, x);
  x = ops::dense(tape, x, net.at("fc1.w"), net.at("fc1.b"));
  x = ops::leaky_relu(tape, x, T(0.2));
  x = ops::dense(tape, x, net.at("fc2.w"), net.at("fc2.b"));
  return ops::sigmoid(tape, x);
}

Tensor<float> volume_to_tensor(const Volume& v) {
  Shape s{1, 1};
  for (std::uint32_t d : v.dims) s.push_back(static_cast<int>(d));
  return Tensor<float>::from(std::move(s), v.samples);
}

Tensor<float> condition_to_tensor(const ConditionField& c) {
  Shape s{1, static_cast<int>(c.channels)};
  for (std::uint32_t d : c.dims) s.push_back(static_cast<int>(d));
  return Tensor<float>::from(std::move(s), c.values);
}

Volume tensor_to_volume(const Tensor<float>& t, float dt_ms) {
  if (t.rank() < 3 || t.dim(0) != 1 || t.dim(1) != 1) {
    throw ShapeError("expected a [1,1,spatial...] tensor, got " + shape_str(t.shape()));
  }
  Volume v;
  for (std::size_t a = 2; a < t.rank(); ++a) v.dims.push_back(static_cast<std::uint32_t>(t.dim(a)));
  v.samples = t.values();
  v.dt_ms = dt_ms;
  return v;
}

Volume enhance(ModelParams<float>& generator, const Volume& degraded,
               const std::optional<ConditionField>& condition) {
  degraded.check();
  if (generator.spec.rank != degraded.rank()) {
    throw ShapeError("generator rank " + std::to_string(generator.spec.rank) +
                     " does not match volume rank " + std::to_string(degraded.rank()));
  }
  if (generator.spec.fusion.has_value() != condition.has_value()) {
    throw ContractError(generator.spec.fusion
                            ? "conditional generator requires a condition field"
                            : "unconditional generator was given a condition field");
  }
  Tape<float> tape = Tape<float>::inference();
  std::optional<Tensor<float>> cond;
  if (condition) {
    if (condition->dims != degraded.dims) {
      throw ShapeError("condition dims " + dims_str(condition->dims) +
                       " do not match volume dims " + dims_str(degraded.dims));
    }
    cond = condition_to_tensor(*condition);
  }
  Tensor<float> out =
      generator_forward(tape, generator, volume_to_tensor(degraded), cond, BnMode::Infer);
  return tensor_to_volume(out, degraded.dt_ms);
}

template struct ModelParams<float>;
template struct ModelParams<double>;

#define SEISGAN_INSTANTIATE_NETWORK(T)                                                       \
  template ModelParams<T> build_generator<T>(const NetworkSpec&, std::uint64_t);             \
  template ModelParams<T> build_discriminator<T>(const NetworkSpec&, std::uint64_t);         \
  template Tensor<T> generator_forward<T>(Tape<T>&, ModelParams<T>&, const Tensor<T>&,       \
                                          const std::optional<Tensor<T>>&, BnMode);          \
  template Tensor<T> discriminator_forward<T>(Tape<T>&, ModelParams<T>&, const Tensor<T>&,   \
                                              const std::optional<Tensor<T>>&, BnMode);

SEISGAN_INSTANTIATE_NETWORK(float)
SEISGAN_INSTANTIATE_NETWORK(double)

#undef SEISGAN_INSTANTIATE_NETWORK

}  // namespace seisgan
