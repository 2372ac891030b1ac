#include "seisgan/tensor.hpp"

#include <atomic>
#include <sstream>

namespace seisgan {

std::size_t shape_size(const Shape& shape) {
  std::size_t n = 1;
  for (int d : shape) {
    if (d <= 0) {
      throw ShapeError("non-positive dimension in shape " + shape_str(shape));
    }
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << ',';
    out << shape[i];
  }
  out << ']';
  return out.str();
}

namespace detail {

std::uint64_t next_node_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace detail

template <class T>
Tensor<T> Tensor<T>::zeros(Shape shape) {
  const std::size_t n = shape_size(shape);
  Tensor t;
  t.node_ = std::make_shared<detail::TensorNode<T>>();
  t.node_->shape = std::move(shape);
  t.node_->value.assign(n, T(0));
  t.node_->id = detail::next_node_id();
  return t;
}

template <class T>
Tensor<T> Tensor<T>::full(Shape shape, T fill) {
  Tensor t = zeros(std::move(shape));
  for (T& v : t.values()) v = fill;
  return t;
}

template <class T>
Tensor<T> Tensor<T>::from(Shape shape, std::vector<T> values) {
  const std::size_t n = shape_size(shape);
  if (values.size() != n) {
    throw ShapeError("value count " + std::to_string(values.size()) + " does not match shape " +
                     shape_str(shape));
  }
  Tensor t;
  t.node_ = std::make_shared<detail::TensorNode<T>>();
  t.node_->shape = std::move(shape);
  t.node_->value = std::move(values);
  t.node_->id = detail::next_node_id();
  return t;
}

template <class T>
std::vector<T>& Tensor<T>::grad() {
  if (node_->grad.empty()) {
    node_->grad.assign(node_->value.size(), T(0));
  }
  return node_->grad;
}

template <class T>
const std::vector<T>& Tensor<T>::grad() const {
  if (node_->grad.empty()) {
    node_->grad.assign(node_->value.size(), T(0));
  }
  return node_->grad;
}

template <class T>
void Tensor<T>::zero_grad() {
  if (!node_->grad.empty()) {
    std::fill(node_->grad.begin(), node_->grad.end(), T(0));
  }
}

template <class T>
T Tensor<T>::item() const {
  if (size() != 1) {
    throw ContractError("item() on tensor of shape " + shape_str(shape()));
  }
  return node_->value[0];
}

template <class T>
Tensor<T> Tensor<T>::detached_copy() const {
  return Tensor::from(shape(), values());
}

template <class T>
void Tape<T>::record(std::vector<std::uint64_t> inputs, std::uint64_t output,
                     std::function<void()> backward) {
  if (!recording_) return;
  ops_.push_back(Record{std::move(inputs), output, std::move(backward)});
}

template <class T>
void Tape<T>::backward(const Tensor<T>& loss) {
  if (consumed_) {
    throw ContractError("backward called twice on the same tape");
  }
  if (loss.size() != 1) {
    throw ContractError("backward requires a scalar loss, got shape " + shape_str(loss.shape()));
  }
  consumed_ = true;
  const_cast<Tensor<T>&>(loss).grad()[0] += T(1);
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    it->backward();
  }
}

template <class T>
bool Tape<T>::topologically_ordered() const {
  for (const Record& op : ops_) {
    for (std::uint64_t in : op.inputs) {
      if (in >= op.output) return false;
    }
  }
  return true;
}

template class Tensor<float>;
template class Tensor<double>;
template class Tape<float>;
template class Tape<double>;

}  // namespace seisgan
