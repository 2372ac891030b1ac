#include "seisgan/optim.hpp"

#include <cmath>

namespace seisgan {

template <class T>
void adam_step(NamedTensors<T>& params, AdamState<T>& state, T lr, T beta1, T beta2, T epsilon) {
  if (state.m.size() != params.size()) {
    throw ContractError("adam state tracks " + std::to_string(state.m.size()) +
                        " parameters, got " + std::to_string(params.size()));
  }
  for (auto& [name, p] : params) {
    if (!p.grad_allocated()) {
      throw ContractError("adam_step: missing gradient for parameter '" + name + "'");
    }
  }
  state.step += 1;
  const T bc1 = T(1) - static_cast<T>(std::pow(static_cast<double>(beta1), state.step));
  const T bc2 = T(1) - static_cast<T>(std::pow(static_cast<double>(beta2), state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor<T>& p = params[i].second;
    std::vector<T>& m = state.m[i];
    std::vector<T>& v = state.v[i];
    std::vector<T>& g = p.grad();
    std::vector<T>& val = p.values();
    for (std::size_t j = 0; j < val.size(); ++j) {
      m[j] = beta1 * m[j] + (T(1) - beta1) * g[j];
      v[j] = beta2 * v[j] + (T(1) - beta2) * g[j] * g[j];
      const T mhat = m[j] / bc1;
      const T vhat = v[j] / bc2;
      val[j] -= lr * mhat / (static_cast<T>(std::sqrt(static_cast<double>(vhat))) + epsilon);
    }
    p.zero_grad();
  }
}

template void adam_step<float>(NamedTensors<float>&, AdamState<float>&, float, float, float,
                               float);
template void adam_step<double>(NamedTensors<double>&, AdamState<double>&, double, double, double,
                                double);

}  // namespace seisgan
