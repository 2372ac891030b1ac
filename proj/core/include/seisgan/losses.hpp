#pragma once

#include "seisgan/ops.hpp"

namespace seisgan {

// Mean squared error between the ground truth and the generator output,
// averaged over every element (batch, channel, and spatial grid).
template <class T>
Tensor<T> content_loss(Tape<T>& tape, const Tensor<T>& truth, const Tensor<T>& generated);

// -mean[log D(x|c) + log(1 - D(G(z|c)))], in nats. Inputs are sigmoid
// probabilities; they are clamped to [1e-7, 1-1e-7] before the logs.
template <class T>
Tensor<T> discriminator_loss(Tape<T>& tape, const Tensor<T>& d_real, const Tensor<T>& d_fake);

// Non-saturating generator objective -mean[log D(G(z|c))].
template <class T>
Tensor<T> generator_adversarial_loss(Tape<T>& tape, const Tensor<T>& d_fake);

// content_loss + adversarial_weight * generator_adversarial_loss.
template <class T>
Tensor<T> perceptual_loss(Tape<T>& tape, const Tensor<T>& truth, const Tensor<T>& generated,
                          const Tensor<T>& d_fake, T adversarial_weight);

}  // namespace seisgan
