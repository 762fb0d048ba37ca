#pragma once

#include "dpht/random.hpp"

namespace dpht {

// Scale parameter b of a zero-mean Laplace distribution. Utilities live in
// [0,1], so the scale is dimensionless.
struct LaplaceScale {
  double b;
  explicit LaplaceScale(double scale);
};

// Scale of the threshold-proposal noise: 2/(k*eps0).
LaplaceScale threshold_noise_scale(int k, double eps0);

// Scale of the per-candidate query noise: 4/(k*eps0).
LaplaceScale query_noise_scale(int k, double eps0);

// Inverse CDF of Laplace(0, b) evaluated at p in (0,1). p = 0.5 maps to 0.
double laplace_quantile(double b, double p);

// One Laplace draw via inverse-CDF transform of the stream's next uniform.
double laplace_sample(const LaplaceScale& scale, RandomStream& stream);

}  // namespace dpht
