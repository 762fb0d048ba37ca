#include "dpht/mechanisms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpht {

LaplaceScale::LaplaceScale(double scale) : b(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("Laplace scale must be positive and finite, got " +
                                std::to_string(scale));
  }
}

LaplaceScale threshold_noise_scale(int k, double eps0) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  return LaplaceScale(2.0 / (static_cast<double>(k) * eps0));
}

LaplaceScale query_noise_scale(int k, double eps0) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  return LaplaceScale(4.0 / (static_cast<double>(k) * eps0));
}

double laplace_quantile(double b, double p) {
  const double c = p - 0.5;
  if (c == 0.0) return 0.0;
  const double s = c > 0.0 ? 1.0 : -1.0;
  return -b * s * std::log(1.0 - 2.0 * std::abs(c));
}

double laplace_sample(const LaplaceScale& scale, RandomStream& stream) {
  return laplace_quantile(scale.b, stream.next_unit());
}

}  // namespace dpht
