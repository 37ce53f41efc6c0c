#include "retrodict/logistic/map.hpp"

#include <string>

#include "retrodict/errors.hpp"

namespace retrodict::logistic {

void require_parameter(double r) {
  if (!(r > 0.0 && r <= 4.0)) throw InputError("logistic parameter r must lie in (0, 4], got " + std::to_string(r));
}

double iterate_map(double x, double r, std::size_t tau, std::size_t* clamps) {
  require_parameter(r);
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("logistic map: x must lie in [0, 1]");
  for (std::size_t i = 0; i < tau; ++i) {
    x = r * x * (1.0 - x);
    if (x < 0.0 || x > 1.0) {
      x = x < 0.0 ? 0.0 : 1.0;
      if (clamps) ++*clamps;
    }
  }
  return x;
}

std::vector<std::pair<double, double>> basin_image(double r, std::size_t tau, std::size_t resolution) {
  require_parameter(r);
  if (resolution == 0) throw InputError("basin image: resolution must be positive");
  std::vector<std::pair<double, double>> out;
  out.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x0 = (static_cast<double>(i) + 0.5) / static_cast<double>(resolution);
    out.emplace_back(x0, iterate_map(x0, r, tau));
  }
  return out;
}

}  // namespace retrodict::logistic
