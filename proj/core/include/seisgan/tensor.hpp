#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "seisgan/errors.hpp"

namespace seisgan {

using Shape = std::vector<int>;

std::size_t shape_size(const Shape& shape);
std::string shape_str(const Shape& shape);

namespace detail {

template <class T>
struct TensorNode {
  Shape shape;
  std::vector<T> value;
  std::vector<T> grad;  // empty until first touched
  std::uint64_t id = 0;
};

std::uint64_t next_node_id();

}  // namespace detail

// Dense n-d array carrying a value grid and a lazily allocated gradient grid
// of the same shape. Copies are shallow handles onto the same node, so a
// tensor captured by a tape closure sees gradient updates made later.
template <class T>
class Tensor {
 public:
  using value_type = T;

  Tensor() = default;

  static Tensor zeros(Shape shape);
  static Tensor full(Shape shape, T fill);
  static Tensor from(Shape shape, std::vector<T> values);
  static Tensor scalar(T value) { return from({1}, {value}); }

  bool defined() const { return static_cast<bool>(node_); }

  const Shape& shape() const { return node_->shape; }
  int dim(std::size_t axis) const { return node_->shape[axis]; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t size() const { return node_->value.size(); }

  std::vector<T>& values() { return node_->value; }
  const std::vector<T>& values() const { return node_->value; }

  // Allocates a zero gradient grid on first use.
  std::vector<T>& grad();
  const std::vector<T>& grad() const;
  bool grad_allocated() const { return !node_->grad.empty(); }
  void zero_grad();

  std::uint64_t id() const { return node_->id; }

  // Value of a single-element tensor.
  T item() const;

  // Same values, fresh node, no tape lineage.
  Tensor detached_copy() const;

 private:
  std::shared_ptr<detail::TensorNode<T>> node_;
};

// Ordered record of primitive operations from one forward pass. Replaying
// the backward rules in reverse accumulates gradients per the chain rule.
// A tape is consumed by backward(); a second backward() without a fresh
// forward pass is a contract error (double-backward is unsupported).
template <class T>
class Tape {
 public:
  Tape() = default;

  static Tape inference() {
    Tape t;
    t.recording_ = false;
    return t;
  }

  bool recording() const { return recording_; }

  void record(std::vector<std::uint64_t> inputs, std::uint64_t output,
              std::function<void()> backward);

  void backward(const Tensor<T>& loss);

  std::size_t op_count() const { return ops_.size(); }
  bool consumed() const { return consumed_; }

  // Every operation's inputs must precede it (node ids grow monotonically).
  bool topologically_ordered() const;

 private:
  struct Record {
    std::vector<std::uint64_t> inputs;
    std::uint64_t output;
    std::function<void()> backward;
  };

  std::vector<Record> ops_;
  bool recording_ = true;
  bool consumed_ = false;
};

using DiffTensor = Tensor<float>;

}  // namespace seisgan
