#pragma once

#include <cstddef>

namespace vlsf {

struct ConfidenceInterval {
  double low;
  double high;
};

/// Clopper-Pearson (exact binomial) confidence interval for
/// `successes` out of `trials` at the given confidence level.
ConfidenceInterval clopper_pearson(std::size_t successes, std::size_t trials,
                                   double confidence = 0.95);

}  // namespace vlsf
