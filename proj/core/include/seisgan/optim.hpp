#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seisgan/tensor.hpp"

namespace seisgan {

template <class T>
using NamedTensors = std::vector<std::pair<std::string, Tensor<T>>>;

// Adam accumulators, one (m, v) pair per parameter in registration order.
// Moments start at zero; the step counter advances by one per update.
template <class T>
struct AdamState {
  std::vector<std::vector<T>> m;
  std::vector<std::vector<T>> v;
  std::int64_t step = 0;

  void reset(const NamedTensors<T>& params) {
    m.clear();
    v.clear();
    for (const auto& [name, p] : params) {
      m.emplace_back(p.size(), T(0));
      v.emplace_back(p.size(), T(0));
    }
    step = 0;
  }
};

// One bias-corrected Adam update over all parameters. Every parameter must
// have a populated gradient grid; gradients are zeroed afterwards.
template <class T>
void adam_step(NamedTensors<T>& params, AdamState<T>& state, T lr, T beta1 = T(0.9),
               T beta2 = T(0.999), T epsilon = T(1e-8));

}  // namespace seisgan
