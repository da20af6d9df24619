#ifndef TAILAVG_PLOT_HPP
#define TAILAVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tailavg/averaging.hpp"
#include "tailavg/errors.hpp"
#include "tailavg/report.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

enum class PlotKind { survival_fit, qq };

constexpr const char* to_string(PlotKind k) {
  return k == PlotKind::survival_fit ? "survival_fit" : "qq";
}

struct PlotPoint {
  double x = 0.0;
  double observed = 0.0;
  double fitted = 0.0;
};

struct PlotSeries {
  PlotKind kind = PlotKind::survival_fit;
  std::vector<PlotPoint> rows;  // sorted ascending by x
};

struct PlotBundle {
  PlotSeries survival;
  PlotSeries qq;
};

// Log-log survival and quantile series for the observations above the
// weighted threshold. Empirical survival uses Hazen positions over the
// exceedances; the fitted curve is the Pareto tail at (alpha_bar,
// threshold_bar), for which log S(x) = alpha_bar * (log u - log x).
inline PlotBundle plot_survival_fit(const Sample& s, const WeightedEstimate& est) {
  const auto first_above =
      std::upper_bound(s.values.begin(), s.values.end(), est.threshold_bar);
  const std::size_t m_e = static_cast<std::size_t>(s.values.end() - first_above);
  if (m_e == 0) {
    throw error(errc::no_exceedances, "plot_survival_fit: no observations above threshold");
  }
  const double log_u = std::log(est.threshold_bar);

  PlotBundle bundle;
  bundle.survival.kind = PlotKind::survival_fit;
  bundle.qq.kind = PlotKind::qq;
  bundle.survival.rows.reserve(m_e);
  bundle.qq.rows.reserve(m_e);
  for (std::size_t i = 0; i < m_e; ++i) {
    const double x = *(first_above + static_cast<std::ptrdiff_t>(i));
    const double log_x = std::log(x);
    // rank from the top: the i-th smallest exceedance is the (m_e - i)-th largest
    const double rank = static_cast<double>(m_e - i);
    const double surv = (rank - 0.5) / static_cast<double>(m_e);
    bundle.survival.rows.push_back(
        PlotPoint{log_x, std::log(surv), est.alpha_bar * (log_u - log_x)});
    bundle.qq.rows.push_back(
        PlotPoint{log_x, log_x, log_u - std::log(surv) / est.alpha_bar});
  }
  return bundle;
}

inline std::string plot_csv(const PlotSeries& series) {
  std::string out = "x,observed,fitted\n";
  for (const PlotPoint& p : series.rows) {
    out += format_real(p.x) + "," + format_real(p.observed) + "," + format_real(p.fitted) + "\n";
  }
  return out;
}

}  // namespace tailavg

#endif  // TAILAVG_PLOT_HPP
