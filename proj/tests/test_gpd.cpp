#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tailavg/gpd.hpp"
#include "tailavg/rng.hpp"
#include "tailavg/sample.hpp"

using Catch::Matchers::WithinAbs;
using tailavg::errc;
using tailavg::error;
using tailavg::gpd_excess_mle;
using tailavg::make_sample;
using tailavg::Sample;

namespace {

// Inverse-CDF GPD excess sampler, independent of the library samplers.
std::vector<double> gpd_excesses(double xi, double sigma, std::size_t k,
                                 tailavg::SeededStream& rng) {
  std::vector<double> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double u = rng.uniform_open01();
    out.push_back(sigma * (std::pow(1.0 - u, -xi) - 1.0) / xi);
  }
  return out;
}

// Sample whose minimum is the threshold and whose k exceedances are u + y.
Sample sample_from_excesses(double u, const std::vector<double>& y) {
  std::vector<double> values{u};
  for (double v : y) values.push_back(u + v);
  return make_sample(values, false);
}

// Direct two-parameter average log-likelihood of the excesses.
double direct_avg_loglik(const std::vector<double>& y, double xi, double sigma) {
  double acc = 0.0;
  for (double v : y) {
    const double t = 1.0 + (xi / sigma) * v;
    if (t <= 0.0) return -1e300;
    acc += std::log(t);
  }
  const double k = static_cast<double>(y.size());
  return -std::log(sigma) - (1.0 / xi + 1.0) * acc / k;
}

}  // namespace

TEST_CASE("gpd_excess_mle recovers shape and scale at large k", "[gpd]") {
  tailavg::SeededStream rng(2024, 0);
  const auto y = gpd_excesses(0.5, 1.0, 10000, rng);
  const auto s = sample_from_excesses(1.0, y);
  const auto fit = gpd_excess_mle(s, 10000);
  REQUIRE(fit.threshold == 1.0);
  REQUIRE_THAT(fit.xi_hat, WithinAbs(0.5, 0.05));
  REQUIRE_THAT(fit.sigma_hat, WithinAbs(1.0, 0.05));
  REQUIRE_THAT(fit.criterion, WithinAbs(fit.avg_loglik - 2.0 / 10000.0, 1e-12));

  // The optimum must dominate a 50x50 audit grid over a box bracketing
  // the true parameters.
  double grid_max = -1e300;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double xi = 0.3 + 0.4 * (i + 0.5) / 50.0;
      const double sigma = 0.8 + 0.45 * (j + 0.5) / 50.0;
      grid_max = std::max(grid_max, direct_avg_loglik(y, xi, sigma));
    }
  }
  REQUIRE(fit.avg_loglik >= grid_max - 1e-6);
}

TEST_CASE("gpd_excess_mle rejects equal excesses and bad counts", "[gpd]") {
  const auto flat = make_sample(std::vector<double>{1.0, 3.0, 3.0, 3.0}, false);
  try {
    gpd_excess_mle(flat, 3);
    FAIL("expected error");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::degenerate_excesses);
  }
  const auto s = make_sample(std::vector<double>{1.0, 2.0, 3.0}, false);
  CHECK_THROWS_AS(gpd_excess_mle(s, 1), error);
  CHECK_THROWS_AS(gpd_excess_mle(s, 3), error);
}

TEST_CASE("gpd_excess_mle signals non-convergence on short-tailed excesses", "[gpd]") {
  // Evenly spaced excesses look uniform, whose GPD shape is -1; the
  // maximizer pins to the search boundary instead of returning a fit.
  std::vector<double> values{10.0};
  for (int j = 1; j <= 200; ++j) values.push_back(10.0 + j / 200.0);
  const auto s = make_sample(values, false);
  try {
    gpd_excess_mle(s, 200);
    FAIL("expected error");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::convergence_failure);
  }
}

TEST_CASE("gpd_excess_mle support constraint holds at the fit", "[gpd]") {
  tailavg::SeededStream rng(5, 5);
  const auto y = gpd_excesses(1.2, 2.0, 500, rng);
  const auto s = sample_from_excesses(3.0, y);
  const auto fit = gpd_excess_mle(s, 500);
  for (double v : y) {
    REQUIRE(1.0 + (fit.xi_hat / fit.sigma_hat) * v > 0.0);
  }
}
