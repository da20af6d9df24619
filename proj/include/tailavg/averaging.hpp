#ifndef TAILAVG_AVERAGING_HPP
#define TAILAVG_AVERAGING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tailavg/errors.hpp"
#include "tailavg/gpd.hpp"
#include "tailavg/pareto.hpp"
#include "tailavg/regression.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

enum class Method { pareto, regression, gpd };

constexpr const char* to_string(Method m) {
  switch (m) {
    case Method::pareto: return "pareto";
    case Method::regression: return "regression";
    case Method::gpd: return "gpd";
  }
  return "unknown";
}

inline Method method_from_string(std::string_view name) {
  if (name == "pareto") return Method::pareto;
  if (name == "regression") return Method::regression;
  if (name == "gpd") return Method::gpd;
  throw error(errc::bad_spec, "unknown method: " + std::string(name));
}

// Candidate exceedance counts {k_min, k_min+stride, ..., <= k_max}.
struct ThresholdGrid {
  std::size_t k_min = 50;
  std::size_t k_max = 500;
  std::size_t stride = 1;

  std::size_t count() const { return (k_max - k_min) / stride + 1; }

  std::vector<std::size_t> candidates() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t m = k_min; m <= k_max; m += stride) out.push_back(m);
    return out;
  }
};

inline ThresholdGrid build_grid(std::size_t n, std::size_t k_min = 50,
                                std::size_t k_max = 500, std::size_t stride = 1) {
  if (stride < 1) {
    throw error(errc::grid_out_of_range, "build_grid: stride must be >= 1");
  }
  if (k_min < 2 || k_min >= k_max || k_max >= n) {
    throw error(errc::grid_out_of_range,
                "build_grid: need 2 <= k_min < k_max < n (n=" + std::to_string(n) + ")");
  }
  ThresholdGrid grid{k_min, k_max, stride};
  if (grid.count() == 0) {
    throw error(errc::empty_grid, "build_grid: empty candidate set");
  }
  return grid;
}

struct WeightEntry {
  std::size_t m = 0;
  double criterion = 0.0;
  double weight = 0.0;
};

struct SkippedCandidate {
  std::size_t m = 0;
  errc reason = errc::convergence_failure;
};

struct WeightTable {
  std::vector<WeightEntry> entries;        // sorted by m ascending
  std::vector<SkippedCandidate> skipped;   // candidates that failed to fit
};

// w_m = exp(I_m/2) / sum_j exp(I_j/2), stabilized by max subtraction.
inline WeightTable compute_weights(std::span<const std::pair<std::size_t, double>> criteria) {
  if (criteria.empty()) {
    throw error(errc::all_candidates_failed, "compute_weights: no fitted candidates");
  }
  WeightTable table;
  table.entries.reserve(criteria.size());
  for (const auto& [m, crit] : criteria) {
    table.entries.push_back(WeightEntry{m, crit, 0.0});
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.m < b.m; });
  double max_crit = table.entries.front().criterion;
  for (const WeightEntry& e : table.entries) max_crit = std::max(max_crit, e.criterion);
  double sum = 0.0;
  for (WeightEntry& e : table.entries) {
    e.weight = std::exp(0.5 * (e.criterion - max_crit));
    sum += e.weight;
  }
  for (WeightEntry& e : table.entries) e.weight /= sum;
  return table;
}

inline WeightTable compute_weights(const std::vector<std::pair<std::size_t, double>>& criteria) {
  return compute_weights(std::span<const std::pair<std::size_t, double>>(criteria));
}

struct WeightedEstimate {
  double alpha_bar = 0.0;
  double xi_bar = 0.0;
  double threshold_bar = 0.0;
  std::size_t m_eff = 0;  // observations strictly above threshold_bar
  Method method = Method::pareto;
};

inline WeightedEstimate weighted_estimate(const Sample& s, std::span<const CandidateFit> fits,
                                          const WeightTable& weights, Method method) {
  if (fits.size() != weights.entries.size()) {
    throw error(errc::misaligned_inputs, "weighted_estimate: fits and weights differ in size");
  }
  WeightedEstimate est;
  est.method = method;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (fits[i].m != weights.entries[i].m) {
      throw error(errc::misaligned_inputs, "weighted_estimate: fits and weights disagree on m");
    }
    const double w = weights.entries[i].weight;
    est.alpha_bar += w * fits[i].alpha_hat;
    est.threshold_bar += w * fits[i].threshold;
  }
  est.xi_bar = 1.0 / est.alpha_bar;
  est.m_eff = static_cast<std::size_t>(
      s.values.end() - std::upper_bound(s.values.begin(), s.values.end(), est.threshold_bar));
  return est;
}

struct EstimateResult {
  WeightedEstimate weighted;
  WeightTable weights;
  std::vector<CandidateFit> fits;  // aligned with weights.entries
};

namespace detail {

inline CandidateFit fit_candidate(const Sample& s, std::size_t m, Method method) {
  switch (method) {
    case Method::pareto:
      return pareto_mle(s, m);
    case Method::regression: {
      const RegressionFit fit = survival_regression(s, m);
      const double threshold = s.values[s.size() - m - 1];
      return CandidateFit{m, threshold, fit.alpha_hat, fit.avg_loglik_proxy, fit.criterion};
    }
    case Method::gpd: {
      const GpdFit fit = gpd_excess_mle(s, m);
      if (!(fit.xi_hat > 0.0)) {
        throw error(errc::non_positive_shape,
                    "gpd candidate: xi <= 0 has no positive tail index");
      }
      return CandidateFit{m, fit.threshold, 1.0 / fit.xi_hat, fit.avg_loglik, fit.criterion};
    }
  }
  throw error(errc::bad_spec, "fit_candidate: unknown method");
}

}  // namespace detail

// Fits every grid candidate (failures become skipped entries), converts
// criteria to weights, and aggregates. Deterministic for fixed inputs.
inline EstimateResult estimate(const Sample& s, const ThresholdGrid& grid, Method method) {
  if (grid.k_min < 2 || grid.k_min >= grid.k_max || grid.k_max >= s.size() || grid.stride < 1) {
    throw error(errc::grid_out_of_range, "estimate: grid invalid for sample size");
  }
  EstimateResult result;
  std::vector<std::pair<std::size_t, double>> criteria;
  for (std::size_t m : grid.candidates()) {
    try {
      CandidateFit fit = detail::fit_candidate(s, m, method);
      criteria.emplace_back(m, fit.criterion);
      result.fits.push_back(fit);
    } catch (const error& e) {
      result.weights.skipped.push_back(SkippedCandidate{m, e.code()});
    }
  }
  WeightTable table = compute_weights(criteria);
  table.skipped = std::move(result.weights.skipped);
  result.weights = std::move(table);
  result.weighted = weighted_estimate(s, result.fits, result.weights, method);
  return result;
}

}  // namespace tailavg

#endif  // TAILAVG_AVERAGING_HPP
