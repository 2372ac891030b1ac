#include <algorithm>
#include <cmath>
#include <vector>

#include "seisgan/ops.hpp"

namespace seisgan::ops {

namespace {

template <class T>
void check_same_shape(const char* op, const Tensor<T>& a, const Tensor<T>& b) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shapes differ, " + shape_str(a.shape()) + " vs " +
                     shape_str(b.shape()));
  }
}

// Channel layout for [N,C,...]: flat = (n*C + c)*P + p with P the spatial cell count.
template <class T>
std::size_t spatial_cells(const Tensor<T>& t) {
  std::size_t p = 1;
  for (std::size_t a = 2; a < t.rank(); ++a) p *= static_cast<std::size_t>(t.dim(a));
  return p;
}

template <class T>
void check_channelled(const char* op, const Tensor<T>& x, const Tensor<T>& per_channel) {
  if (x.rank() < 2) {
    throw ShapeError(std::string(op) + ": input must be [N,C,...], got " + shape_str(x.shape()));
  }
  if (per_channel.rank() != 1 || per_channel.dim(0) != x.dim(1)) {
    throw ShapeError(std::string(op) + ": per-channel parameter must be [" +
                     std::to_string(x.dim(1)) + "], got " + shape_str(per_channel.shape()));
  }
}

}  // namespace

template <class T>
Tensor<T> batchnorm(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& gamma,
                    const Tensor<T>& beta, BnMode mode, BnStats<T>& stats, T momentum, T epsilon) {
  check_channelled("batchnorm", input, gamma);
  check_channelled("batchnorm", input, beta);
  const int batch = input.dim(0);
  const int channels = input.dim(1);
  const std::size_t cells = spatial_cells(input);
  const std::size_t reduce_count = static_cast<std::size_t>(batch) * cells;

  if (stats.mean.empty()) {
    stats.mean.assign(channels, T(0));
    stats.var.assign(channels, T(1));
  }
  if (mode == BnMode::Infer && !stats.initialized) {
    throw ContractError("batchnorm: infer mode before any train-mode update");
  }

  std::vector<T> mu(channels), inv(channels);
  const T* x = input.values().data();
  if (mode == BnMode::Infer) {
    for (int c = 0; c < channels; ++c) {
      mu[c] = stats.mean[c];
      inv[c] = T(1) / std::sqrt(stats.var[c] + epsilon);
    }
  } else {
    for (int c = 0; c < channels; ++c) {
      double sum = 0.0;
      for (int n = 0; n < batch; ++n) {
        const T* row = x + (static_cast<std::size_t>(n) * channels + c) * cells;
        for (std::size_t p = 0; p < cells; ++p) sum += row[p];
      }
      const double mean = sum / static_cast<double>(reduce_count);
      double sq = 0.0;
      for (int n = 0; n < batch; ++n) {
        const T* row = x + (static_cast<std::size_t>(n) * channels + c) * cells;
        for (std::size_t p = 0; p < cells; ++p) {
          const double d = row[p] - mean;
          sq += d * d;
        }
      }
      const double var = sq / static_cast<double>(reduce_count);
      mu[c] = static_cast<T>(mean);
      inv[c] = static_cast<T>(1.0 / std::sqrt(var + static_cast<double>(epsilon)));
      if (mode == BnMode::Train) {
        stats.mean[c] = momentum * stats.mean[c] + (T(1) - momentum) * static_cast<T>(mean);
        stats.var[c] = momentum * stats.var[c] + (T(1) - momentum) * static_cast<T>(var);
      }
    }
    if (mode == BnMode::Train) stats.initialized = true;
  }

  Tensor<T> out = Tensor<T>::zeros(input.shape());
  const T* g = gamma.values().data();
  const T* b = beta.values().data();
  T* y = out.values().data();
  for (int n = 0; n < batch; ++n) {
    for (int c = 0; c < channels; ++c) {
      const std::size_t base = (static_cast<std::size_t>(n) * channels + c) * cells;
      const T m = mu[c], iv = inv[c], gc = g[c], bc = b[c];
      for (std::size_t p = 0; p < cells; ++p) {
        y[base + p] = gc * (x[base + p] - m) * iv + bc;
      }
    }
  }

  if (tape.recording()) {
    Tensor<T> x_t = input, g_t = gamma, b_t = beta, out_t = out;
    const bool batch_stats = (mode != BnMode::Infer);
    tape.record({input.id(), gamma.id(), beta.id()}, out.id(),
                [x_t, g_t, b_t, out_t, mu, inv, batch, channels, cells, reduce_count,
                 batch_stats]() mutable {
                  const T* x = x_t.values().data();
                  const T* g = g_t.values().data();
                  const T* dy = out_t.grad().data();
                  T* dx = x_t.grad().data();
                  T* dg = g_t.grad().data();
                  T* db = b_t.grad().data();
                  const double m = static_cast<double>(reduce_count);
                  for (int c = 0; c < channels; ++c) {
                    const T mean = mu[c], iv = inv[c];
                    double s1 = 0.0, s2 = 0.0;
                    for (int n = 0; n < batch; ++n) {
                      const std::size_t base = (static_cast<std::size_t>(n) * channels + c) * cells;
                      for (std::size_t p = 0; p < cells; ++p) {
                        const double xh = (x[base + p] - mean) * iv;
                        s1 += dy[base + p];
                        s2 += dy[base + p] * xh;
                      }
                    }
                    dg[c] += static_cast<T>(s2);
                    db[c] += static_cast<T>(s1);
                    const T gi = g[c] * iv;
                    if (batch_stats) {
                      const T c1 = static_cast<T>(s1 / m);
                      const T c2 = static_cast<T>(s2 / m);
                      for (int n = 0; n < batch; ++n) {
                        const std::size_t base =
                            (static_cast<std::size_t>(n) * channels + c) * cells;
                        for (std::size_t p = 0; p < cells; ++p) {
                          const T xh = (x[base + p] - mean) * iv;
                          dx[base + p] += gi * (dy[base + p] - c1 - xh * c2);
                        }
                      }
                    } else {
                      for (int n = 0; n < batch; ++n) {
                        const std::size_t base =
                            (static_cast<std::size_t>(n) * channels + c) * cells;
                        for (std::size_t p = 0; p < cells; ++p) {
                          dx[base + p] += gi * dy[base + p];
                        }
                      }
                    }
                  }
                });
  }
  return out;
}

template <class T>
Tensor<T> prelu(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& alpha) {
  check_channelled("prelu", input, alpha);
  const int batch = input.dim(0);
  const int channels = input.dim(1);
  const std::size_t cells = spatial_cells(input);
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  const T* x = input.values().data();
  const T* a = alpha.values().data();
  T* y = out.values().data();
  for (int n = 0; n < batch; ++n) {
    for (int c = 0; c < channels; ++c) {
      const std::size_t base = (static_cast<std::size_t>(n) * channels + c) * cells;
      const T ac = a[c];
      for (std::size_t p = 0; p < cells; ++p) {
        const T v = x[base + p];
        y[base + p] = v > T(0) ? v : ac * v;
      }
    }
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, a_t = alpha, out_t = out;
    tape.record({input.id(), alpha.id()}, out.id(),
                [x_t, a_t, out_t, batch, channels, cells]() mutable {
                  const T* x = x_t.values().data();
                  const T* a = a_t.values().data();
                  const T* dy = out_t.grad().data();
                  T* dx = x_t.grad().data();
                  T* da = a_t.grad().data();
                  for (int n = 0; n < batch; ++n) {
                    for (int c = 0; c < channels; ++c) {
                      const std::size_t base = (static_cast<std::size_t>(n) * channels + c) * cells;
                      const T ac = a[c];
                      T acc = T(0);
                      for (std::size_t p = 0; p < cells; ++p) {
                        const T v = x[base + p];
                        if (v > T(0)) {
                          dx[base + p] += dy[base + p];
                        } else {
                          dx[base + p] += ac * dy[base + p];
                          acc += dy[base + p] * v;
                        }
                      }
                      da[c] += acc;
                    }
                  }
                });
  }
  return out;
}

template <class T>
Tensor<T> leaky_relu(Tape<T>& tape, const Tensor<T>& input, T slope) {
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  const T* x = input.values().data();
  T* y = out.values().data();
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > T(0) ? x[i] : slope * x[i];
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t, slope]() mutable {
      const T* x = x_t.values().data();
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) {
        dx[i] += (x[i] > T(0) ? T(1) : slope) * dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> sigmoid(Tape<T>& tape, const Tensor<T>& input) {
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  const T* x = input.values().data();
  T* y = out.values().data();
  for (std::size_t i = 0; i < input.size(); ++i) {
    y[i] = static_cast<T>(1.0 / (1.0 + std::exp(-static_cast<double>(x[i]))));
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t]() mutable {
      const T* y = out_t.values().data();
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) {
        dx[i] += y[i] * (T(1) - y[i]) * dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> tanh_act(Tape<T>& tape, const Tensor<T>& input) {
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  const T* x = input.values().data();
  T* y = out.values().data();
  for (std::size_t i = 0; i < input.size(); ++i) {
    y[i] = static_cast<T>(std::tanh(static_cast<double>(x[i])));
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t]() mutable {
      const T* y = out_t.values().data();
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) {
        dx[i] += (T(1) - y[i] * y[i]) * dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> dense(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& weights,
                const Tensor<T>& bias) {
  if (input.rank() != 2) {
    throw ShapeError("dense input must be [N,F], got " + shape_str(input.shape()));
  }
  if (weights.rank() != 2 || weights.dim(0) != input.dim(1)) {
    throw ShapeError("dense weights must be [F,O] with F=" + std::to_string(input.dim(1)) +
                     ", got " + shape_str(weights.shape()));
  }
  if (bias.rank() != 1 || bias.dim(0) != weights.dim(1)) {
    throw ShapeError("dense bias must be [O]=[" + std::to_string(weights.dim(1)) + "], got " +
                     shape_str(bias.shape()));
  }
  const int batch = input.dim(0);
  const int fan_in = input.dim(1);
  const int fan_out = weights.dim(1);
  Tensor<T> out = Tensor<T>::zeros({batch, fan_out});
  const T* x = input.values().data();
  const T* w = weights.values().data();
  const T* b = bias.values().data();
  T* y = out.values().data();
  for (int n = 0; n < batch; ++n) {
    T* yrow = y + static_cast<std::size_t>(n) * fan_out;
    for (int o = 0; o < fan_out; ++o) yrow[o] = b[o];
    const T* xrow = x + static_cast<std::size_t>(n) * fan_in;
    for (int f = 0; f < fan_in; ++f) {
      const T xv = xrow[f];
      const T* wrow = w + static_cast<std::size_t>(f) * fan_out;
      for (int o = 0; o < fan_out; ++o) yrow[o] += xv * wrow[o];
    }
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, w_t = weights, b_t = bias, out_t = out;
    tape.record({input.id(), weights.id(), bias.id()}, out.id(),
                [x_t, w_t, b_t, out_t, batch, fan_in, fan_out]() mutable {
                  const T* x = x_t.values().data();
                  const T* w = w_t.values().data();
                  const T* dy = out_t.grad().data();
                  T* dx = x_t.grad().data();
                  T* dw = w_t.grad().data();
                  T* db = b_t.grad().data();
                  for (int n = 0; n < batch; ++n) {
                    const T* dyrow = dy + static_cast<std::size_t>(n) * fan_out;
                    const T* xrow = x + static_cast<std::size_t>(n) * fan_in;
                    T* dxrow = dx + static_cast<std::size_t>(n) * fan_in;
                    for (int o = 0; o < fan_out; ++o) db[o] += dyrow[o];
                    for (int f = 0; f < fan_in; ++f) {
                      const T* wrow = w + static_cast<std::size_t>(f) * fan_out;
                      T* dwrow = dw + static_cast<std::size_t>(f) * fan_out;
                      T acc = T(0);
                      for (int o = 0; o < fan_out; ++o) {
                        acc += wrow[o] * dyrow[o];
                        dwrow[o] += xrow[f] * dyrow[o];
                      }
                      dxrow[f] += acc;
                    }
                  }
                });
  }
  return out;
}

template <class T>
Tensor<T> add(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  check_same_shape("add", a, b);
  Tensor<T> out = Tensor<T>::zeros(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] + b.values()[i];
  if (tape.recording()) {
    Tensor<T> a_t = a, b_t = b, out_t = out;
    tape.record({a.id(), b.id()}, out.id(), [a_t, b_t, out_t]() mutable {
      const T* dy = out_t.grad().data();
      T* da = a_t.grad().data();
      T* db = b_t.grad().data();
      for (std::size_t i = 0; i < out_t.size(); ++i) {
        da[i] += dy[i];
        db[i] += dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> sub(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  check_same_shape("sub", a, b);
  Tensor<T> out = Tensor<T>::zeros(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] - b.values()[i];
  if (tape.recording()) {
    Tensor<T> a_t = a, b_t = b, out_t = out;
    tape.record({a.id(), b.id()}, out.id(), [a_t, b_t, out_t]() mutable {
      const T* dy = out_t.grad().data();
      T* da = a_t.grad().data();
      T* db = b_t.grad().data();
      for (std::size_t i = 0; i < out_t.size(); ++i) {
        da[i] += dy[i];
        db[i] -= dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> mul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  check_same_shape("mul", a, b);
  Tensor<T> out = Tensor<T>::zeros(a.shape());
  for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] * b.values()[i];
  if (tape.recording()) {
    Tensor<T> a_t = a, b_t = b, out_t = out;
    tape.record({a.id(), b.id()}, out.id(), [a_t, b_t, out_t]() mutable {
      const T* dy = out_t.grad().data();
      const T* av = a_t.values().data();
      const T* bv = b_t.values().data();
      T* da = a_t.grad().data();
      T* db = b_t.grad().data();
      for (std::size_t i = 0; i < out_t.size(); ++i) {
        da[i] += bv[i] * dy[i];
        db[i] += av[i] * dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> concat_channels(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() != b.rank() || a.rank() < 2) {
    throw ShapeError("concat_channels: ranks differ or too small, " + shape_str(a.shape()) +
                     " vs " + shape_str(b.shape()));
  }
  for (std::size_t axis = 0; axis < a.rank(); ++axis) {
    if (axis == 1) continue;
    if (a.dim(axis) != b.dim(axis)) {
      throw ShapeError("concat_channels: shapes differ outside channel axis, " +
                       shape_str(a.shape()) + " vs " + shape_str(b.shape()));
    }
  }
  const int batch = a.dim(0);
  const int ca = a.dim(1);
  const int cb = b.dim(1);
  const std::size_t cells = spatial_cells(a);
  Shape out_shape = a.shape();
  out_shape[1] = ca + cb;
  Tensor<T> out = Tensor<T>::zeros(out_shape);
  const std::size_t a_block = static_cast<std::size_t>(ca) * cells;
  const std::size_t b_block = static_cast<std::size_t>(cb) * cells;
  const std::size_t o_block = a_block + b_block;
  for (int n = 0; n < batch; ++n) {
    std::copy_n(a.values().data() + n * a_block, a_block, out.values().data() + n * o_block);
    std::copy_n(b.values().data() + n * b_block, b_block,
                out.values().data() + n * o_block + a_block);
  }
  if (tape.recording()) {
    Tensor<T> a_t = a, b_t = b, out_t = out;
    tape.record({a.id(), b.id()}, out.id(),
                [a_t, b_t, out_t, batch, a_block, b_block, o_block]() mutable {
                  const T* dy = out_t.grad().data();
                  T* da = a_t.grad().data();
                  T* db = b_t.grad().data();
                  for (int n = 0; n < batch; ++n) {
                    const T* src = dy + n * o_block;
                    for (std::size_t i = 0; i < a_block; ++i) da[n * a_block + i] += src[i];
                    for (std::size_t i = 0; i < b_block; ++i) db[n * b_block + i] += src[a_block + i];
                  }
                });
  }
  return out;
}

template <class T>
Tensor<T> affine(Tape<T>& tape, const Tensor<T>& input, T scale, T shift) {
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out.values()[i] = scale * input.values()[i] + shift;
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t, scale]() mutable {
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) dx[i] += scale * dy[i];
    });
  }
  return out;
}

template <class T>
Tensor<T> log_elem(Tape<T>& tape, const Tensor<T>& input) {
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out.values()[i] = static_cast<T>(std::log(static_cast<double>(input.values()[i])));
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t]() mutable {
      const T* x = x_t.values().data();
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) dx[i] += dy[i] / x[i];
    });
  }
  return out;
}

template <class T>
Tensor<T> clamp(Tape<T>& tape, const Tensor<T>& input, T lo, T hi) {
  if (!(lo < hi)) {
    throw ParamError("clamp requires lo < hi");
  }
  Tensor<T> out = Tensor<T>::zeros(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    out.values()[i] = std::min(std::max(input.values()[i], lo), hi);
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t, lo, hi]() mutable {
      const T* x = x_t.values().data();
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) {
        if (x[i] >= lo && x[i] <= hi) dx[i] += dy[i];
      }
    });
  }
  return out;
}

template <class T>
Tensor<T> mean_all(Tape<T>& tape, const Tensor<T>& input) {
  double acc = 0.0;
  for (const T v : input.values()) acc += v;
  const std::size_t n = input.size();
  Tensor<T> out = Tensor<T>::scalar(static_cast<T>(acc / static_cast<double>(n)));
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t, n]() mutable {
      const T dy = out_t.grad()[0];
      const T w = dy / static_cast<T>(n);
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < n; ++i) dx[i] += w;
    });
  }
  return out;
}

template <class T>
Tensor<T> sum_all(Tape<T>& tape, const Tensor<T>& input) {
  double acc = 0.0;
  for (const T v : input.values()) acc += v;
  Tensor<T> out = Tensor<T>::scalar(static_cast<T>(acc));
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t]() mutable {
      const T dy = out_t.grad()[0];
      T* dx = x_t.grad().data();
      for (std::size_t i = 0; i < x_t.size(); ++i) dx[i] += dy;
    });
  }
  return out;
}

template <class T>
Tensor<T> global_avg_pool(Tape<T>& tape, const Tensor<T>& input) {
  if (input.rank() < 3) {
    throw ShapeError("global_avg_pool input must be [N,C,spatial...], got " +
                     shape_str(input.shape()));
  }
  const int batch = input.dim(0);
  const int channels = input.dim(1);
  const std::size_t cells = spatial_cells(input);
  Tensor<T> out = Tensor<T>::zeros({batch, channels});
  const T* x = input.values().data();
  T* y = out.values().data();
  for (int n = 0; n < batch; ++n) {
    for (int c = 0; c < channels; ++c) {
      const T* row = x + (static_cast<std::size_t>(n) * channels + c) * cells;
      double acc = 0.0;
      for (std::size_t p = 0; p < cells; ++p) acc += row[p];
      y[static_cast<std::size_t>(n) * channels + c] =
          static_cast<T>(acc / static_cast<double>(cells));
    }
  }
  if (tape.recording()) {
    Tensor<T> x_t = input, out_t = out;
    tape.record({input.id()}, out.id(), [x_t, out_t, batch, channels, cells]() mutable {
      const T* dy = out_t.grad().data();
      T* dx = x_t.grad().data();
      for (int n = 0; n < batch; ++n) {
        for (int c = 0; c < channels; ++c) {
          const T w = dy[static_cast<std::size_t>(n) * channels + c] / static_cast<T>(cells);
          T* row = dx + (static_cast<std::size_t>(n) * channels + c) * cells;
          for (std::size_t p = 0; p < cells; ++p) row[p] += w;
        }
      }
    });
  }
  return out;
}

#define SEISGAN_INSTANTIATE_OPS(T)                                                              \
  template Tensor<T> batchnorm<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&,                 \
                                  const Tensor<T>&, BnMode, BnStats<T>&, T, T);                 \
  template Tensor<T> prelu<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                    \
  template Tensor<T> leaky_relu<T>(Tape<T>&, const Tensor<T>&, T);                              \
  template Tensor<T> sigmoid<T>(Tape<T>&, const Tensor<T>&);                                    \
  template Tensor<T> tanh_act<T>(Tape<T>&, const Tensor<T>&);                                   \
  template Tensor<T> dense<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&, const Tensor<T>&);  \
  template Tensor<T> add<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                      \
  template Tensor<T> sub<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                      \
  template Tensor<T> mul<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                      \
  template Tensor<T> concat_channels<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);          \
  template Tensor<T> affine<T>(Tape<T>&, const Tensor<T>&, T, T);                               \
  template Tensor<T> log_elem<T>(Tape<T>&, const Tensor<T>&);                                   \
  template Tensor<T> clamp<T>(Tape<T>&, const Tensor<T>&, T, T);                                \
  template Tensor<T> mean_all<T>(Tape<T>&, const Tensor<T>&);                                   \
  template Tensor<T> sum_all<T>(Tape<T>&, const Tensor<T>&);                                    \
  template Tensor<T> global_avg_pool<T>(Tape<T>&, const Tensor<T>&);

SEISGAN_INSTANTIATE_OPS(float)
SEISGAN_INSTANTIATE_OPS(double)

#undef SEISGAN_INSTANTIATE_OPS

}  // namespace seisgan::ops
