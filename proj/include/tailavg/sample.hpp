#ifndef TAILAVG_SAMPLE_HPP
#define TAILAVG_SAMPLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tailavg/errors.hpp"

namespace tailavg {

// Validated observations, sorted ascending, all strictly positive, n >= 2.
struct Sample {
  std::vector<double> values;
  bool abs_applied = false;

  std::size_t size() const noexcept { return values.size(); }

  // k-th order statistic, 1-based: order_stat(1) is the minimum.
  double order_stat(std::size_t k) const { return values[k - 1]; }
};

inline Sample make_sample(std::span<const double> raw, bool take_abs) {
  if (raw.empty()) throw error(errc::empty_input, "make_sample: empty input");
  std::vector<double> v(raw.begin(), raw.end());
  if (take_abs) {
    for (double& x : v) x = std::fabs(x);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw error(errc::non_finite_value,
                  "make_sample: non-finite value at index " + std::to_string(i), i);
    }
    if (v[i] <= 0.0) {
      throw error(errc::non_positive_value,
                  "make_sample: non-positive value at index " + std::to_string(i), i);
    }
  }
  if (v.size() < 2) {
    throw error(errc::too_few_values, "make_sample: need at least 2 observations");
  }
  std::sort(v.begin(), v.end());
  return Sample{std::move(v), take_abs};
}

inline Sample make_sample(const std::vector<double>& raw, bool take_abs) {
  return make_sample(std::span<const double>(raw), take_abs);
}

}  // namespace tailavg

#endif  // TAILAVG_SAMPLE_HPP
