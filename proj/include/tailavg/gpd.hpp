#ifndef TAILAVG_GPD_HPP
#define TAILAVG_GPD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tailavg/errors.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

// Searched shape range. Lower end open: a maximizer pinned there is treated
// as a convergence failure, not a fit.
inline constexpr double kGpdXiMin = -0.5;
inline constexpr double kGpdXiMax = 5.0;

struct GpdFit {
  double xi_hat = 0.0;
  double sigma_hat = 0.0;
  double threshold = 0.0;  // u
  std::size_t k = 0;
  double avg_loglik = 0.0;
  double criterion = 0.0;
};

namespace detail {

// Profile of the GPD excess log-likelihood in tau = xi/sigma. For fixed tau,
// xi(tau) = mean log(1 + tau*y) maximizes, sigma = xi/tau, and the average
// log-likelihood reduces to -log(xi/tau) - xi - 1. tau = 0 is the
// exponential limit with sigma = mean(y).
class GpdProfile {
 public:
  explicit GpdProfile(std::span<const double> excesses)
      : y_(excesses), y_max_(*std::max_element(y_.begin(), y_.end())) {
    double acc = 0.0;
    for (double v : y_) acc += v;
    y_mean_ = acc / static_cast<double>(y_.size());
  }

  double y_max() const { return y_max_; }
  double y_mean() const { return y_mean_; }
  double tau_support_min() const { return -1.0 / y_max_; }

  double xi(double tau) const {
    if (tau == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : y_) {
      const double t = tau * v;
      if (t <= -1.0) return -std::numeric_limits<double>::infinity();
      acc += std::log1p(t);
    }
    return acc / static_cast<double>(y_.size());
  }

  double avg_loglik(double tau) const {
    if (std::fabs(tau) * y_mean_ < 1e-12) {
      return -std::log(y_mean_) - 1.0;
    }
    const double x = xi(tau);
    if (!std::isfinite(x)) return -std::numeric_limits<double>::infinity();
    const double sigma = x / tau;
    if (!(sigma > 0.0)) return -std::numeric_limits<double>::infinity();
    return -std::log(sigma) - x - 1.0;
  }

 private:
  std::span<const double> y_;
  double y_max_;
  double y_mean_;
};

// Smallest tau with xi(tau) >= target on [lo, hi]; xi is increasing in tau.
inline double gpd_bisect_xi(const GpdProfile& prof, double target, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (std::fabs(lo) + std::fabs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (prof.xi(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace detail

// MLE of (xi, sigma) for the k excesses above u = x_{(n-k)}, via a coarse
// scan plus golden-section refinement of the tau profile. Throws
// convergence_failure when the maximizer pins to a search boundary.
inline GpdFit gpd_excess_mle(const Sample& s, std::size_t k) {
  const std::size_t n = s.size();
  if (k < 2 || k >= n) {
    throw error(errc::bad_exceedance_count,
                "gpd_excess_mle: exceedance count must satisfy 2 <= k < n");
  }
  const double u = s.values[n - k - 1];
  std::vector<double> y(k);
  for (std::size_t j = 0; j < k; ++j) {
    y[j] = s.values[n - k + j] - u;
  }
  if (y.front() == y.back() || y.back() <= 0.0) {
    throw error(errc::degenerate_excesses, "gpd_excess_mle: excesses are all equal");
  }

  const detail::GpdProfile prof{y};

  // Map the xi box onto a tau interval. On the negative side the support
  // bound -1/y_max may be hit before xi reaches kGpdXiMin.
  const double tau_support = prof.tau_support_min();
  double tau_lo = tau_support * (1.0 - 1e-9);
  if (prof.xi(tau_lo) < kGpdXiMin) {
    tau_lo = detail::gpd_bisect_xi(prof, kGpdXiMin, tau_lo, 0.0);
  }
  double tau_hi = 1.0 / prof.y_mean();
  while (prof.xi(tau_hi) < kGpdXiMax) tau_hi *= 4.0;
  double tau_hi_lo = tau_hi;
  while (tau_hi_lo > 1e-300 && prof.xi(tau_hi_lo) >= kGpdXiMax) tau_hi_lo *= 0.25;
  tau_hi = detail::gpd_bisect_xi(prof, kGpdXiMax, tau_hi_lo, tau_hi);

  // Coarse scan in an asinh-transformed coordinate (smooth through tau = 0),
  // then golden-section on the bracketing cell.
  const double scale = prof.y_mean();
  const double t_lo = std::asinh(tau_lo * scale);
  const double t_hi = std::asinh(tau_hi * scale);
  const auto tau_of = [&](double t) { return std::sinh(t) / scale; };

  constexpr int kScanPoints = 160;
  int best = 0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScanPoints; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / kScanPoints;
    const double ll = prof.avg_loglik(tau_of(t));
    if (ll > best_ll) {
      best_ll = ll;
      best = i;
    }
  }
  if (!std::isfinite(best_ll)) {
    throw error(errc::convergence_failure, "gpd_excess_mle: likelihood not finite anywhere");
  }

  const double step = (t_hi - t_lo) / kScanPoints;
  double a = t_lo + step * std::max(0, best - 1);
  double b = t_lo + step * std::min(kScanPoints, best + 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = prof.avg_loglik(tau_of(c));
  double fd = prof.avg_loglik(tau_of(d));
  for (int i = 0; i < 120 && b - a > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = prof.avg_loglik(tau_of(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = prof.avg_loglik(tau_of(d));
    }
  }
  const double t_best = 0.5 * (a + b);
  const double tau_best = tau_of(t_best);
  const double avg_ll = prof.avg_loglik(tau_best);

  // Boundary-pinned optimum means the likelihood wants to leave the box.
  const double span = t_hi - t_lo;
  if (t_best - t_lo < 1e-6 * span || t_hi - t_best < 1e-6 * span) {
    throw error(errc::convergence_failure,
                "gpd_excess_mle: maximizer pinned to the search boundary");
  }

  GpdFit fit;
  fit.k = k;
  fit.threshold = u;
  if (std::fabs(tau_best) * prof.y_mean() < 1e-12) {
    fit.xi_hat = 0.0;
    fit.sigma_hat = prof.y_mean();
  } else {
    fit.xi_hat = prof.xi(tau_best);
    fit.sigma_hat = fit.xi_hat / tau_best;
  }
  fit.avg_loglik = avg_ll;
  fit.criterion = avg_ll - 2.0 / static_cast<double>(k);
  if (!(fit.sigma_hat > 0.0) || !std::isfinite(fit.avg_loglik)) {
    throw error(errc::convergence_failure, "gpd_excess_mle: degenerate optimum");
  }
  return fit;
}

}  // namespace tailavg

#endif  // TAILAVG_GPD_HPP
