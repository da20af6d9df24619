#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tailavg/pareto.hpp"
#include "tailavg/rng.hpp"
#include "tailavg/sample.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using tailavg::errc;
using tailavg::error;
using tailavg::hill_estimator;
using tailavg::make_sample;
using tailavg::pareto_avg_loglik;
using tailavg::pareto_mle;
using tailavg::Sample;

namespace {

constexpr double kE = 2.718281828459045;

// Inverse-CDF Pareto sampler, independent of the library samplers.
std::vector<double> pareto_draws(double alpha, double beta, std::size_t n,
                                 tailavg::SeededStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(beta * std::pow(rng.uniform_open01(), -1.0 / alpha));
  }
  return out;
}

// Average Pareto log-density over the m exceedances, by direct summation.
double brute_avg_loglik(const Sample& s, std::size_t m, double alpha, double beta) {
  const std::size_t n = s.size();
  double acc = 0.0;
  for (std::size_t i = n - m; i < n; ++i) {
    acc += std::log(alpha) + alpha * std::log(beta) - (alpha + 1.0) * std::log(s.values[i]);
  }
  return acc / static_cast<double>(m);
}

}  // namespace

TEST_CASE("pareto_mle closed forms", "[pareto]") {
  // threshold 1, exceedances {1, e}: alpha = 2 / (log 1 + log e) = 2
  const auto s = make_sample(std::vector<double>{1.0, 1.0, kE}, false);
  const auto fit = pareto_mle(s, 2);
  REQUIRE(fit.threshold == 1.0);
  REQUIRE_THAT(fit.alpha_hat, WithinRel(2.0, 1e-14));

  // threshold 2, exceedances {2, 2e, 2e^2}: sum of logs = 3, alpha = 1
  const auto s2 = make_sample(std::vector<double>{2.0, 2.0, 2.0 * kE, 2.0 * kE * kE}, false);
  const auto fit2 = pareto_mle(s2, 3);
  REQUIRE(fit2.threshold == 2.0);
  REQUIRE_THAT(fit2.alpha_hat, WithinRel(1.0, 1e-14));
  REQUIRE_THAT(fit2.criterion, WithinRel(fit2.avg_loglik - 2.0 / 3.0, 1e-14));
}

TEST_CASE("pareto_avg_loglik closed forms", "[pareto]") {
  REQUIRE_THAT(pareto_avg_loglik(2.0, 1.0), WithinAbs(std::log(2.0) - 1.5, 1e-15));
  REQUIRE_THAT(pareto_avg_loglik(1.0, 1.0), WithinAbs(-2.0, 1e-15));
  REQUIRE_THAT(pareto_avg_loglik(1.0, kE), WithinAbs(-3.0, 1e-12));
  CHECK_THROWS_AS(pareto_avg_loglik(0.0, 1.0), error);
  CHECK_THROWS_AS(pareto_avg_loglik(1.0, -1.0), error);
}

TEST_CASE("pareto_avg_loglik matches brute-force mean log-density at the MLE", "[pareto]") {
  tailavg::SeededStream rng(11, 0);
  const auto s = make_sample(pareto_draws(1.7, 2.0, 400, rng), false);
  for (std::size_t m : {5, 50, 399}) {
    const auto fit = pareto_mle(s, m);
    const double brute = brute_avg_loglik(s, m, fit.alpha_hat, fit.threshold);
    REQUIRE_THAT(fit.avg_loglik, WithinRel(brute, 1e-10));
  }
}

TEST_CASE("pareto_mle recovers the index of a large Pareto sample", "[pareto]") {
  tailavg::SeededStream rng(42, 0);
  const auto s = make_sample(pareto_draws(1.5, 1.0, 100000, rng), false);
  const auto fit = pareto_mle(s, 10000);
  REQUIRE_THAT(fit.alpha_hat, WithinAbs(1.5, 0.05));

  // Independent check: direct maximization of the exceedance log-likelihood
  // on a 1-D grid over alpha, threshold fixed at the fitted one.
  double best_alpha = 0.0, best_ll = -1e300;
  for (double a = 1.0; a <= 2.0; a += 1e-4) {
    const double ll = brute_avg_loglik(s, 10000, a, fit.threshold);
    if (ll > best_ll) {
      best_ll = ll;
      best_alpha = a;
    }
  }
  REQUIRE_THAT(fit.alpha_hat, WithinAbs(best_alpha, 1e-3));
  REQUIRE(fit.avg_loglik >= best_ll - 1e-9);
}

TEST_CASE("pareto_mle edge cases", "[pareto]") {
  const auto flat = make_sample(std::vector<double>{2.0, 2.0, 2.0, 2.0}, false);
  try {
    pareto_mle(flat, 3);
    FAIL("expected error");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::degenerate_tail);
  }
  const auto s = make_sample(std::vector<double>{1.0, 2.0, 3.0}, false);
  CHECK_THROWS_AS(pareto_mle(s, 1), error);
  CHECK_THROWS_AS(pareto_mle(s, 3), error);
}

TEST_CASE("hill_estimator closed form and contract", "[pareto]") {
  const auto s = make_sample(std::vector<double>{2.0, 2.0 * kE, 2.0 * kE * kE}, false);
  REQUIRE_THAT(hill_estimator(s, 2), WithinRel(2.0 / 3.0, 1e-14));
  CHECK_THROWS_AS(hill_estimator(s, 3), error);  // m = n
}

TEST_CASE("hill_estimator equals pareto_mle alpha on random data for all grid m", "[pareto]") {
  tailavg::SeededStream rng(7, 3);
  const auto s = make_sample(pareto_draws(1.2, 1.0, 2500, rng), false);
  for (std::size_t m = 50; m <= 500; ++m) {
    const double hill = hill_estimator(s, m);
    const double mle = pareto_mle(s, m).alpha_hat;
    REQUIRE_THAT(hill, WithinRel(mle, 1e-10));
  }
}

TEST_CASE("pareto index is scale invariant and criterion shifts by -log c", "[pareto]") {
  tailavg::SeededStream rng(99, 1);
  const auto raw = pareto_draws(0.9, 1.0, 1500, rng);
  const auto s = make_sample(raw, false);
  std::vector<double> scaled(raw);
  const double c = 7.0;
  for (double& x : scaled) x *= c;
  const auto sc = make_sample(scaled, false);
  for (std::size_t m : {50, 117, 500}) {
    const auto a = pareto_mle(s, m);
    const auto b = pareto_mle(sc, m);
    REQUIRE_THAT(b.alpha_hat, WithinRel(a.alpha_hat, 1e-12));
    REQUIRE_THAT(b.criterion, WithinAbs(a.criterion - std::log(c), 1e-10));
  }
}
