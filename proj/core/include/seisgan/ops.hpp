#pragma once

#include <optional>
#include <vector>

#include "seisgan/tensor.hpp"

namespace seisgan {

enum class Padding { Same, Valid };

enum class BnMode {
  Train,   // batch statistics, running stats updated
  Frozen,  // batch statistics, running stats untouched (net frozen in the other half-step)
  Infer,   // running statistics
};

// Running batch-norm statistics for one layer, one entry per channel.
template <class T>
struct BnStats {
  std::vector<T> mean;
  std::vector<T> var;
  bool initialized = false;
};

namespace ops {

// Cross-correlation over rank-2 or rank-3 spatial grids.
// input [N,Cin,spatial...], kernel [Cout,Cin,k...], bias [Cout] (optional).
template <class T>
Tensor<T> conv(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& kernel,
               const std::optional<Tensor<T>>& bias, int stride, Padding padding);

template <class T>
Tensor<T> batchnorm(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& gamma,
                    const Tensor<T>& beta, BnMode mode, BnStats<T>& stats,
                    T momentum = T(0.9), T epsilon = T(1e-5));

// PReLU with a learnable per-channel slope for negative inputs.
template <class T>
Tensor<T> prelu(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& alpha);

template <class T>
Tensor<T> leaky_relu(Tape<T>& tape, const Tensor<T>& input, T slope);

template <class T>
Tensor<T> sigmoid(Tape<T>& tape, const Tensor<T>& input);

template <class T>
Tensor<T> tanh_act(Tape<T>& tape, const Tensor<T>& input);

// Affine map on [N,F]: output = input * weights + bias, weights [F,O], bias [O].
template <class T>
Tensor<T> dense(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& weights,
                const Tensor<T>& bias);

template <class T>
Tensor<T> add(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);

template <class T>
Tensor<T> sub(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);

template <class T>
Tensor<T> mul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);

// Stacks b's channels after a's; shapes must agree except on axis 1.
template <class T>
Tensor<T> concat_channels(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);

// output = scale * input + shift (elementwise, constants).
template <class T>
Tensor<T> affine(Tape<T>& tape, const Tensor<T>& input, T scale, T shift);

// Natural log. Caller guarantees strictly positive inputs (clamp first).
template <class T>
Tensor<T> log_elem(Tape<T>& tape, const Tensor<T>& input);

// Clamp to [lo, hi]; gradient passes through unclamped entries only.
template <class T>
Tensor<T> clamp(Tape<T>& tape, const Tensor<T>& input, T lo, T hi);

template <class T>
Tensor<T> mean_all(Tape<T>& tape, const Tensor<T>& input);

template <class T>
Tensor<T> sum_all(Tape<T>& tape, const Tensor<T>& input);

// [N,C,spatial...] -> [N,C], mean over the spatial grid.
template <class T>
Tensor<T> global_avg_pool(Tape<T>& tape, const Tensor<T>& input);

}  // namespace ops

// Output spatial extent of a convolution along one axis.
int conv_out_extent(int in, int kernel, int stride, Padding padding);

}  // namespace seisgan
