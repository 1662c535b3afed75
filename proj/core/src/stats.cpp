#include "vlsf/stats.hpp"

#include <boost/math/distributions/beta.hpp>

#include <stdexcept>

namespace vlsf {

ConfidenceInterval clopper_pearson(std::size_t successes, std::size_t trials, double confidence) {
  if (trials == 0) throw std::domain_error("clopper_pearson: trials must be positive");
  if (successes > trials) throw std::domain_error("clopper_pearson: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("clopper_pearson: confidence must lie in (0, 1)");
  }
  const double alpha = 1.0 - confidence;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);

  ConfidenceInterval ci{0.0, 1.0};
  if (successes > 0) {
    boost::math::beta_distribution<double> lower_dist(k, n - k + 1.0);
    ci.low = boost::math::quantile(lower_dist, alpha / 2.0);
  }
  if (successes < trials) {
    boost::math::beta_distribution<double> upper_dist(k + 1.0, n - k);
    ci.high = boost::math::quantile(upper_dist, 1.0 - alpha / 2.0);
  }
  return ci;
}

}  // namespace vlsf
