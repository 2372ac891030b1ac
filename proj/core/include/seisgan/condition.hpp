#pragma once

#include "seisgan/earth.hpp"
#include "seisgan/volume.hpp"

namespace seisgan {

// Deterministic mode: K one-hot channels from the class grid.
// Probabilistic mode: a single Gaussian-blurred salt indicator channel,
// clamped to [0, 1]; blur_sigma 0 keeps the crisp {0, 1} mask.
ConditionField encode_condition(const EarthModel& model, ConditionField::Mode mode,
                                double blur_sigma = 0.0);

}  // namespace seisgan
