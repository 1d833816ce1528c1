#pragma once

#include <random>

namespace picolor {

/// Seeded generator used by every randomized routine.
using Rng = std::mt19937_64;

} // namespace picolor
