#ifndef TAILAVG_REGRESSION_HPP
#define TAILAVG_REGRESSION_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tailavg/errors.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

// Residual RMS floor; an exact-line fit would otherwise give an infinite
// criterion and a degenerate weight of one.
inline constexpr double kSigmaFloor = 1e-12;

struct RegressionFit {
  std::size_t m = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double alpha_hat = 0.0;        // = -slope
  double sigma_hat = 0.0;        // residual RMS, 1/m normalization
  double avg_loglik_proxy = 0.0; // = -log(max(sigma_hat, kSigmaFloor))
  double criterion = 0.0;
};

struct OlsLine {
  double slope = 0.0;
  double intercept = 0.0;
  double sigma = 0.0;  // sqrt((1/m) * sum of squared residuals)
};

// Least squares of y on x with intercept, residual RMS normalized by 1/m.
inline OlsLine fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) {
    throw error(errc::bad_point_count, "fit_line: need matching x/y with at least 2 points");
  }
  double x_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    x_mean += x[i];
    y_mean += y[i];
  }
  x_mean /= static_cast<double>(m);
  y_mean /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - x_mean;
    sxx += dx * dx;
    sxy += dx * (y[i] - y_mean);
  }
  if (sxx <= 0.0) {
    throw error(errc::degenerate_points, "fit_line: zero variance in x");
  }
  OlsLine line;
  line.slope = sxy / sxx;
  line.intercept = y_mean - line.slope * x_mean;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - line.intercept - line.slope * x[i];
    ss += r * r;
  }
  line.sigma = std::sqrt(ss / static_cast<double>(m));
  return line;
}

// Power-tail regression over the m largest observations: the j-th largest
// gets Hazen survival (j - 0.5)/n, and log S is regressed on log x.
inline RegressionFit survival_regression(const Sample& s, std::size_t m) {
  const std::size_t n = s.size();
  if (m < 3 || m >= n) {
    throw error(errc::bad_point_count,
                "survival_regression: point count must satisfy 3 <= m < n");
  }
  std::vector<double> log_x(m), log_s(m);
  for (std::size_t j = 1; j <= m; ++j) {
    log_x[j - 1] = std::log(s.values[n - j]);
    log_s[j - 1] = std::log((static_cast<double>(j) - 0.5) / static_cast<double>(n));
  }
  const OlsLine line = fit_line(log_x, log_s);
  RegressionFit fit;
  fit.m = m;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.alpha_hat = -line.slope;
  fit.sigma_hat = line.sigma;
  fit.avg_loglik_proxy = -std::log(std::max(line.sigma, kSigmaFloor));
  fit.criterion = fit.avg_loglik_proxy - 2.0 / static_cast<double>(m);
  return fit;
}

}  // namespace tailavg

#endif  // TAILAVG_REGRESSION_HPP
