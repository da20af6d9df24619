#ifndef TAILAVG_PARETO_HPP
#define TAILAVG_PARETO_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "tailavg/errors.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

// One candidate threshold's fit. The threshold is the order statistic just
// below the m exceedances; criterion = avg_loglik - 2/m.
struct CandidateFit {
  std::size_t m = 0;
  double threshold = 0.0;
  double alpha_hat = 0.0;
  double avg_loglik = 0.0;
  double criterion = 0.0;
};

// Per-observation log-likelihood of a Pareto(alpha, threshold) sample
// evaluated at its own MLE: log(a) - log(b) - (a+1)/a.
inline double pareto_avg_loglik(double alpha, double threshold) {
  if (!(alpha > 0.0) || !(threshold > 0.0)) {
    throw error(errc::non_positive_parameter,
                "pareto_avg_loglik: alpha and threshold must be positive");
  }
  return std::log(alpha) - std::log(threshold) - (alpha + 1.0) / alpha;
}

namespace detail {

inline void check_exceedance_count(const Sample& s, std::size_t m, const char* who) {
  if (m < 2 || m >= s.size()) {
    throw error(errc::bad_exceedance_count,
                std::string(who) + ": exceedance count must satisfy 2 <= m < n");
  }
}

}  // namespace detail

// MLE of the Pareto index over the m largest observations, threshold fixed
// at the order statistic below them: alpha = m / sum log(x_i / threshold).
inline CandidateFit pareto_mle(const Sample& s, std::size_t m) {
  detail::check_exceedance_count(s, m, "pareto_mle");
  const std::size_t n = s.size();
  const double threshold = s.values[n - m - 1];
  double sum_log = 0.0;
  for (std::size_t i = n - m; i < n; ++i) {
    sum_log += std::log(s.values[i] / threshold);
  }
  if (sum_log <= 0.0) {
    throw error(errc::degenerate_tail, "pareto_mle: all exceedances equal the threshold");
  }
  const double alpha = static_cast<double>(m) / sum_log;
  const double avg_ll = pareto_avg_loglik(alpha, threshold);
  return CandidateFit{m, threshold, alpha, avg_ll, avg_ll - 2.0 / static_cast<double>(m)};
}

// Reciprocal mean log-ratio of the top m order statistics to the threshold
// order statistic. Agrees with pareto_mle().alpha_hat up to rounding.
inline double hill_estimator(const Sample& s, std::size_t m) {
  detail::check_exceedance_count(s, m, "hill_estimator");
  const std::size_t n = s.size();
  double mean_log = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_log += std::log(s.values[n - 1 - i]);
  }
  mean_log /= static_cast<double>(m);
  const double denom = mean_log - std::log(s.values[n - m - 1]);
  if (denom <= 0.0) {
    throw error(errc::degenerate_tail, "hill_estimator: all exceedances equal the threshold");
  }
  return 1.0 / denom;
}

}  // namespace tailavg

#endif  // TAILAVG_PARETO_HPP
