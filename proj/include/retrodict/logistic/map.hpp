#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace retrodict::logistic {

/// Throws InputError unless 0 < r <= 4, where the map keeps [0, 1] invariant.
void require_parameter(double r);

/// tau iterations of x -> r x (1 - x). Results are clamped to [0, 1] to absorb
/// last-bit rounding; each clamp is added to *clamps when given.
double iterate_map(double x, double r, std::size_t tau, std::size_t* clamps = nullptr);

/// Final value x_tau for `resolution` initial points at the bin midpoints
/// (i + 1/2) / resolution, as (x0, x_tau) pairs.
std::vector<std::pair<double, double>> basin_image(double r, std::size_t tau = 200, std::size_t resolution = 1000);

}  // namespace retrodict::logistic
