#ifndef TAILAVG_STUDY_HPP
#define TAILAVG_STUDY_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "tailavg/averaging.hpp"
#include "tailavg/distributions.hpp"
#include "tailavg/errors.hpp"
#include "tailavg/rng.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

struct StudyConfig {
  DistributionSpec spec;
  std::size_t n = 2500;
  std::size_t replicates = 1;
  ThresholdGrid grid;
  Method method = Method::pareto;
  std::uint64_t master_seed = 0;
  bool take_abs = true;
};

struct StudyResult {
  double true_alpha = 0.0;
  double mean_alpha = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  double mean_threshold = 0.0;
  std::vector<double> per_replicate_alphas;  // replicate-id order, failures excluded
  std::size_t failures = 0;
};

namespace detail {

struct ReplicateOutcome {
  bool ok = false;
  double alpha = 0.0;
  double threshold = 0.0;
};

inline ReplicateOutcome run_replicate(const StudyConfig& cfg, std::size_t replicate_id) {
  try {
    SeededStream stream(cfg.master_seed, replicate_id);
    const std::vector<double> raw = draw(cfg.spec, cfg.n, stream);
    const Sample s = make_sample(raw, cfg.take_abs);
    const EstimateResult res = estimate(s, cfg.grid, cfg.method);
    return ReplicateOutcome{true, res.weighted.alpha_bar, res.weighted.threshold_bar};
  } catch (const error&) {
    return ReplicateOutcome{};
  }
}

inline void validate_study_config(const StudyConfig& cfg) {
  cfg.spec.validate();
  if (cfg.replicates < 1) throw error(errc::bad_spec, "study: replicates must be >= 1");
  if (cfg.grid.k_min < 2 || cfg.grid.k_min >= cfg.grid.k_max || cfg.grid.k_max >= cfg.n ||
      cfg.grid.stride < 1) {
    throw error(errc::grid_out_of_range, "study: grid invalid for sample size");
  }
  const bool abs_family = cfg.spec.family != Family::gpd;
  if (cfg.take_abs != abs_family) {
    throw error(errc::bad_spec,
                "study: take_abs must be true for stable/t families and false for gpd");
  }
}

}  // namespace detail

// Replicated estimation with per-replicate seeded streams. The aggregate is
// an ordered reduction over replicate ids, so the result does not depend on
// thread count or scheduling. threads == 0 picks the hardware count.
inline StudyResult run_study(const StudyConfig& cfg, unsigned threads = 1) {
  detail::validate_study_config(cfg);

  std::vector<detail::ReplicateOutcome> outcomes(cfg.replicates);
  unsigned t = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (t < 1) t = 1;
  t = static_cast<unsigned>(std::min<std::size_t>(t, cfg.replicates));

  if (t <= 1) {
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      outcomes[r] = detail::run_replicate(cfg, r);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned i = 0; i < t; ++i) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t r = next.fetch_add(1);
          if (r >= cfg.replicates) return;
          outcomes[r] = detail::run_replicate(cfg, r);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  StudyResult result;
  result.true_alpha = cfg.spec.true_alpha();
  double sum_alpha = 0.0, sum_sq_err = 0.0, sum_threshold = 0.0;
  for (const detail::ReplicateOutcome& o : outcomes) {
    if (!o.ok) {
      ++result.failures;
      continue;
    }
    result.per_replicate_alphas.push_back(o.alpha);
    sum_alpha += o.alpha;
    const double err = o.alpha - result.true_alpha;
    sum_sq_err += err * err;
    sum_threshold += o.threshold;
  }
  if (result.failures * 10 > cfg.replicates) {
    throw error(errc::too_many_failures,
                "study: more than 10% of replicates failed (" +
                    std::to_string(result.failures) + "/" + std::to_string(cfg.replicates) + ")");
  }
  const double count = static_cast<double>(result.per_replicate_alphas.size());
  result.mean_alpha = sum_alpha / count;
  result.bias = result.mean_alpha - result.true_alpha;
  result.mse = sum_sq_err / count;
  result.mean_threshold = sum_threshold / count;
  return result;
}

// Equal-width bins spanning [min, max] of the per-replicate estimates.
inline std::vector<std::pair<double, std::size_t>> histogram_data(const StudyResult& result,
                                                                  std::size_t bins) {
  if (result.per_replicate_alphas.empty()) {
    throw error(errc::empty_result, "histogram_data: no replicate estimates");
  }
  if (bins < 1) throw error(errc::bad_spec, "histogram_data: bins must be >= 1");
  double lo = result.per_replicate_alphas.front();
  double hi = lo;
  for (double a : result.per_replicate_alphas) {
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::pair<double, std::size_t>> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    out[i] = {lo + (static_cast<double>(i) + 0.5) * width, 0};
  }
  for (double a : result.per_replicate_alphas) {
    std::size_t idx = width > 0.0 ? static_cast<std::size_t>((a - lo) / width) : 0;
    if (idx >= bins) idx = bins - 1;
    ++out[idx].second;
  }
  return out;
}

}  // namespace tailavg

#endif  // TAILAVG_STUDY_HPP
