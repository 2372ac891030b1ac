#include <algorithm>
#include <vector>

#include "seisgan/ops.hpp"

namespace seisgan {

int conv_out_extent(int in, int kernel, int stride, Padding padding) {
  if (padding == Padding::Same) {
    return (in + stride - 1) / stride;
  }
  if (in < kernel) {
    throw ShapeError("valid convolution needs input extent >= kernel extent, got " +
                     std::to_string(in) + " < " + std::to_string(kernel));
  }
  return (in - kernel) / stride + 1;
}

namespace {

struct ConvGeom {
  int rank = 2;  // spatial rank
  int in[3] = {1, 1, 1};
  int out[3] = {1, 1, 1};
  int k[3] = {1, 1, 1};
  int pad[3] = {0, 0, 0};
  int stride = 1;
  int cin = 1;
  int cout = 1;
  std::size_t in_cells = 1;   // product of input spatial extents
  std::size_t out_cells = 1;  // product of output spatial extents
  std::size_t kvol = 1;       // product of kernel spatial extents
};

template <class T>
ConvGeom make_geom(const Tensor<T>& input, const Tensor<T>& kernel, int stride, Padding padding) {
  const Shape& is = input.shape();
  const Shape& ks = kernel.shape();
  if (is.size() != 4 && is.size() != 5) {
    throw ShapeError("conv input must be [N,C,spatial...] rank 4 or 5, got " + shape_str(is));
  }
  if (ks.size() != is.size()) {
    throw ShapeError("conv kernel rank must match input rank: input " + shape_str(is) +
                     ", kernel " + shape_str(ks));
  }
  if (ks[1] != is[1]) {
    throw ShapeError("conv kernel input channels do not match: input " + shape_str(is) +
                     ", kernel " + shape_str(ks));
  }
  if (stride < 1) {
    throw ParamError("conv stride must be >= 1, got " + std::to_string(stride));
  }
  ConvGeom g;
  g.rank = static_cast<int>(is.size()) - 2;
  g.stride = stride;
  g.cin = is[1];
  g.cout = ks[0];
  for (int a = 0; a < g.rank; ++a) {
    g.in[a] = is[2 + a];
    g.k[a] = ks[2 + a];
    g.out[a] = conv_out_extent(g.in[a], g.k[a], stride, padding);
    if (padding == Padding::Same) {
      const int total = std::max((g.out[a] - 1) * stride + g.k[a] - g.in[a], 0);
      g.pad[a] = total / 2;
    }
    g.in_cells *= static_cast<std::size_t>(g.in[a]);
    g.out_cells *= static_cast<std::size_t>(g.out[a]);
    g.kvol *= static_cast<std::size_t>(g.k[a]);
  }
  return g;
}

// C[M,N] += A[M,K] * B[K,N]
template <class T>
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const T* arow = a + i * k;
    T* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const T av = arow[p];
      const T* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] += av * brow[j];
      }
    }
  }
}

// C[M,N] += A[M,K] * B[N,K]^T
template <class T>
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) {
    const T* arow = a + i * k;
    T* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const T* brow = b + j * k;
      T acc = T(0);
      for (std::size_t p = 0; p < k; ++p) {
        acc += arow[p] * brow[p];
      }
      crow[j] += acc;
    }
  }
}

// C[M,N] += A[K,M]^T * B[K,N]
template <class T>
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t p = 0; p < k; ++p) {
    const T* arow = a + p * m;
    const T* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const T av = arow[i];
      T* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) {
        crow[j] += av * brow[j];
      }
    }
  }
}

// Expands one batch item [Cin, spatial] into the patch matrix
// [Cin*kvol, out_cells]; out-of-bounds taps contribute zeros.
template <class T>
void im2col(const ConvGeom& g, const T* in, T* col) {
  if (g.rank == 2) {
    const int H = g.in[0], W = g.in[1];
    const int OH = g.out[0], OW = g.out[1];
    std::size_t row = 0;
    for (int c = 0; c < g.cin; ++c) {
      const T* plane = in + static_cast<std::size_t>(c) * H * W;
      for (int k0 = 0; k0 < g.k[0]; ++k0) {
        for (int k1 = 0; k1 < g.k[1]; ++k1, ++row) {
          T* dst = col + row * g.out_cells;
          for (int o0 = 0; o0 < OH; ++o0) {
            const int i0 = o0 * g.stride + k0 - g.pad[0];
            T* drow = dst + static_cast<std::size_t>(o0) * OW;
            if (i0 < 0 || i0 >= H) {
              std::fill(drow, drow + OW, T(0));
              continue;
            }
            const T* srow = plane + static_cast<std::size_t>(i0) * W;
            for (int o1 = 0; o1 < OW; ++o1) {
              const int i1 = o1 * g.stride + k1 - g.pad[1];
              drow[o1] = (i1 >= 0 && i1 < W) ? srow[i1] : T(0);
            }
          }
        }
      }
    }
  } else {
    const int D = g.in[0], H = g.in[1], W = g.in[2];
    const int OD = g.out[0], OH = g.out[1], OW = g.out[2];
    std::size_t row = 0;
    for (int c = 0; c < g.cin; ++c) {
      const T* grid = in + static_cast<std::size_t>(c) * D * H * W;
      for (int k0 = 0; k0 < g.k[0]; ++k0) {
        for (int k1 = 0; k1 < g.k[1]; ++k1) {
          for (int k2 = 0; k2 < g.k[2]; ++k2, ++row) {
            T* dst = col + row * g.out_cells;
            for (int o0 = 0; o0 < OD; ++o0) {
              const int i0 = o0 * g.stride + k0 - g.pad[0];
              for (int o1 = 0; o1 < OH; ++o1) {
                const int i1 = o1 * g.stride + k1 - g.pad[1];
                T* drow = dst + (static_cast<std::size_t>(o0) * OH + o1) * OW;
                if (i0 < 0 || i0 >= D || i1 < 0 || i1 >= H) {
                  std::fill(drow, drow + OW, T(0));
                  continue;
                }
                const T* srow = grid + (static_cast<std::size_t>(i0) * H + i1) * W;
                for (int o2 = 0; o2 < OW; ++o2) {
                  const int i2 = o2 * g.stride + k2 - g.pad[2];
                  drow[o2] = (i2 >= 0 && i2 < W) ? srow[i2] : T(0);
                }
              }
            }
          }
        }
      }
    }
  }
}

// Scatter-adds a patch-matrix gradient back onto one batch item.
template <class T>
void col2im_add(const ConvGeom& g, const T* col, T* din) {
  if (g.rank == 2) {
    const int H = g.in[0], W = g.in[1];
    const int OH = g.out[0], OW = g.out[1];
    std::size_t row = 0;
    for (int c = 0; c < g.cin; ++c) {
      T* plane = din + static_cast<std::size_t>(c) * H * W;
      for (int k0 = 0; k0 < g.k[0]; ++k0) {
        for (int k1 = 0; k1 < g.k[1]; ++k1, ++row) {
          const T* src = col + row * g.out_cells;
          for (int o0 = 0; o0 < OH; ++o0) {
            const int i0 = o0 * g.stride + k0 - g.pad[0];
            if (i0 < 0 || i0 >= H) continue;
            const T* srow = src + static_cast<std::size_t>(o0) * OW;
            T* drow = plane + static_cast<std::size_t>(i0) * W;
            for (int o1 = 0; o1 < OW; ++o1) {
              const int i1 = o1 * g.stride + k1 - g.pad[1];
              if (i1 >= 0 && i1 < W) drow[i1] += srow[o1];
            }
          }
        }
      }
    }
  } else {
    const int D = g.in[0], H = g.in[1], W = g.in[2];
    const int OD = g.out[0], OH = g.out[1], OW = g.out[2];
    std::size_t row = 0;
    for (int c = 0; c < g.cin; ++c) {
      T* grid = din + static_cast<std::size_t>(c) * D * H * W;
      for (int k0 = 0; k0 < g.k[0]; ++k0) {
        for (int k1 = 0; k1 < g.k[1]; ++k1) {
          for (int k2 = 0; k2 < g.k[2]; ++k2, ++row) {
            const T* src = col + row * g.out_cells;
            for (int o0 = 0; o0 < OD; ++o0) {
              const int i0 = o0 * g.stride + k0 - g.pad[0];
              if (i0 < 0 || i0 >= D) continue;
              for (int o1 = 0; o1 < OH; ++o1) {
                const int i1 = o1 * g.stride + k1 - g.pad[1];
                if (i1 < 0 || i1 >= H) continue;
                const T* srow = src + (static_cast<std::size_t>(o0) * OH + o1) * OW;
                T* drow = grid + (static_cast<std::size_t>(i0) * H + i1) * W;
                for (int o2 = 0; o2 < OW; ++o2) {
                  const int i2 = o2 * g.stride + k2 - g.pad[2];
                  if (i2 >= 0 && i2 < W) drow[i2] += srow[o2];
                }
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace

namespace ops {

template <class T>
Tensor<T> conv(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& kernel,
               const std::optional<Tensor<T>>& bias, int stride, Padding padding) {
  const ConvGeom g = make_geom(input, kernel, stride, padding);
  if (bias && (bias->rank() != 1 || bias->dim(0) != g.cout)) {
    throw ShapeError("conv bias must be [Cout]=[" + std::to_string(g.cout) + "], got " +
                     shape_str(bias->shape()));
  }
  const int batch = input.dim(0);

  Shape out_shape{batch, g.cout};
  for (int a = 0; a < g.rank; ++a) out_shape.push_back(g.out[a]);
  Tensor<T> out = Tensor<T>::zeros(out_shape);

  const std::size_t rows = static_cast<std::size_t>(g.cin) * g.kvol;
  std::vector<T> col(rows * g.out_cells);
  const T* in_data = input.values().data();
  const T* w_data = kernel.values().data();
  T* out_data = out.values().data();
  const std::size_t in_block = static_cast<std::size_t>(g.cin) * g.in_cells;
  const std::size_t out_block = static_cast<std::size_t>(g.cout) * g.out_cells;

  for (int n = 0; n < batch; ++n) {
    im2col(g, in_data + n * in_block, col.data());
    gemm_nn(g.cout, g.out_cells, rows, w_data, col.data(), out_data + n * out_block);
  }
  if (bias) {
    const T* b = bias->values().data();
    for (int n = 0; n < batch; ++n) {
      for (int co = 0; co < g.cout; ++co) {
        T* row = out_data + n * out_block + static_cast<std::size_t>(co) * g.out_cells;
        for (std::size_t p = 0; p < g.out_cells; ++p) row[p] += b[co];
      }
    }
  }

  if (tape.recording()) {
    std::vector<std::uint64_t> in_ids{input.id(), kernel.id()};
    if (bias) in_ids.push_back(bias->id());
    Tensor<T> in_t = input;
    Tensor<T> k_t = kernel;
    std::optional<Tensor<T>> b_t = bias;
    Tensor<T> out_t = out;
    tape.record(std::move(in_ids), out.id(), [g, in_t, k_t, b_t, out_t]() mutable {
      const int batch = in_t.dim(0);
      const std::size_t rows = static_cast<std::size_t>(g.cin) * g.kvol;
      const std::size_t in_block = static_cast<std::size_t>(g.cin) * g.in_cells;
      const std::size_t out_block = static_cast<std::size_t>(g.cout) * g.out_cells;
      std::vector<T> col(rows * g.out_cells);
      std::vector<T> dcol(rows * g.out_cells);
      const T* in_data = in_t.values().data();
      const T* w_data = k_t.values().data();
      const T* dout = out_t.grad().data();
      T* din = in_t.grad().data();
      T* dw = k_t.grad().data();
      for (int n = 0; n < batch; ++n) {
        const T* dy = dout + n * out_block;
        im2col(g, in_data + n * in_block, col.data());
        gemm_nt(g.cout, rows, g.out_cells, dy, col.data(), dw);
        std::fill(dcol.begin(), dcol.end(), T(0));
        gemm_tn(rows, g.out_cells, g.cout, w_data, dy, dcol.data());
        col2im_add(g, dcol.data(), din + n * in_block);
      }
      if (b_t) {
        T* db = b_t->grad().data();
        for (int n = 0; n < batch; ++n) {
          for (int co = 0; co < g.cout; ++co) {
            const T* row = dout + n * out_block + static_cast<std::size_t>(co) * g.out_cells;
            T acc = T(0);
            for (std::size_t p = 0; p < g.out_cells; ++p) acc += row[p];
            db[co] += acc;
          }
        }
      }
    });
  }
  return out;
}

template Tensor<float> conv<float>(Tape<float>&, const Tensor<float>&, const Tensor<float>&,
                                   const std::optional<Tensor<float>>&, int, Padding);
template Tensor<double> conv<double>(Tape<double>&, const Tensor<double>&, const Tensor<double>&,
                                     const std::optional<Tensor<double>>&, int, Padding);

}  // namespace ops
}  // namespace seisgan
