#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
  /// Extra lines printed under the verdict.
  std::vector<std::string> notes;
};

Outcome prox_nonexpansive();
Outcome moreau_gradient_formula();
Outcome zeroth_order_unbiased();
Outcome smoothing_bound();
Outcome sphere_moments();
Outcome reductions();
Outcome accumulator_bounds();
Outcome momentum_bound();
Outcome tstar_law();
Outcome rate_slope();
Outcome figure_ordering();
Outcome weak_convexity_certificates();
Outcome determinism();

}  // namespace acceptance
