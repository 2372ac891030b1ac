#include "seisgan/losses.hpp"

namespace seisgan {

namespace {
// Sigmoid outputs saturate in 32-bit arithmetic; probabilities are pinned
// inside (0,1) before any log.
template <class T>
constexpr T kProbEps = T(1e-7);
}  // namespace

template <class T>
Tensor<T> content_loss(Tape<T>& tape, const Tensor<T>& truth, const Tensor<T>& generated) {
  if (truth.shape() != generated.shape()) {
    throw ShapeError("content_loss: shapes differ, " + shape_str(truth.shape()) + " vs " +
                     shape_str(generated.shape()));
  }
  Tensor<T> diff = ops::sub(tape, truth, generated);
  return ops::mean_all(tape, ops::mul(tape, diff, diff));
}

template <class T>
Tensor<T> discriminator_loss(Tape<T>& tape, const Tensor<T>& d_real, const Tensor<T>& d_fake) {
  if (d_real.shape() != d_fake.shape()) {
    throw ShapeError("discriminator_loss: shapes differ, " + shape_str(d_real.shape()) + " vs " +
                     shape_str(d_fake.shape()));
  }
  Tensor<T> real = ops::clamp(tape, d_real, kProbEps<T>, T(1) - kProbEps<T>);
  Tensor<T> fake = ops::clamp(tape, d_fake, kProbEps<T>, T(1) - kProbEps<T>);
  Tensor<T> log_real = ops::log_elem(tape, real);
  Tensor<T> log_not_fake = ops::log_elem(tape, ops::affine(tape, fake, T(-1), T(1)));
  Tensor<T> mean = ops::mean_all(tape, ops::add(tape, log_real, log_not_fake));
  return ops::affine(tape, mean, T(-1), T(0));
}

template <class T>
Tensor<T> generator_adversarial_loss(Tape<T>& tape, const Tensor<T>& d_fake) {
  Tensor<T> fake = ops::clamp(tape, d_fake, kProbEps<T>, T(1) - kProbEps<T>);
  Tensor<T> mean = ops::mean_all(tape, ops::log_elem(tape, fake));
  return ops::affine(tape, mean, T(-1), T(0));
}

template <class T>
Tensor<T> perceptual_loss(Tape<T>& tape, const Tensor<T>& truth, const Tensor<T>& generated,
                          const Tensor<T>& d_fake, T adversarial_weight) {
  Tensor<T> content = content_loss(tape, truth, generated);
  Tensor<T> adversarial = generator_adversarial_loss(tape, d_fake);
  return ops::add(tape, content, ops::affine(tape, adversarial, adversarial_weight, T(0)));
}

#define SEISGAN_INSTANTIATE_LOSSES(T)                                                         \
  template Tensor<T> content_loss<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);           \
  template Tensor<T> discriminator_loss<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&);     \
  template Tensor<T> generator_adversarial_loss<T>(Tape<T>&, const Tensor<T>&);               \
  template Tensor<T> perceptual_loss<T>(Tape<T>&, const Tensor<T>&, const Tensor<T>&,         \
                                        const Tensor<T>&, T);

SEISGAN_INSTANTIATE_LOSSES(float)
SEISGAN_INSTANTIATE_LOSSES(double)

#undef SEISGAN_INSTANTIATE_LOSSES

}  // namespace seisgan
