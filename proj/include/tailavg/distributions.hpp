#ifndef TAILAVG_DISTRIBUTIONS_HPP
#define TAILAVG_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tailavg/errors.hpp"
#include "tailavg/rng.hpp"

namespace tailavg {

enum class Family { stable, student_t, gpd };

constexpr const char* to_string(Family f) {
  switch (f) {
    case Family::stable: return "stable";
    case Family::student_t: return "t";
    case Family::gpd: return "gpd";
  }
  return "unknown";
}

inline Family family_from_string(std::string_view name) {
  if (name == "stable") return Family::stable;
  if (name == "t" || name == "student_t") return Family::student_t;
  if (name == "gpd") return Family::gpd;
  throw error(errc::bad_spec, "unknown family: " + std::string(name));
}

struct DistributionSpec {
  Family family = Family::stable;
  double alpha = 0.0;  // stable index, in (0, 2]
  double beta = 0.0;   // stable skewness, fixed at 0
  double nu = 0.0;     // t degrees of freedom
  double xi = 0.0;     // gpd shape, > 0
  double mu = 0.0;
  double sigma = 1.0;

  static DistributionSpec stable(double alpha, double mu = 0.0, double sigma = 1.0) {
    DistributionSpec s;
    s.family = Family::stable;
    s.alpha = alpha;
    s.mu = mu;
    s.sigma = sigma;
    s.validate();
    return s;
  }

  static DistributionSpec student_t(double nu, double mu = 0.0, double sigma = 1.0) {
    DistributionSpec s;
    s.family = Family::student_t;
    s.nu = nu;
    s.mu = mu;
    s.sigma = sigma;
    s.validate();
    return s;
  }

  static DistributionSpec gpd(double xi, double mu = 0.0, double sigma = 1.0) {
    DistributionSpec s;
    s.family = Family::gpd;
    s.xi = xi;
    s.mu = mu;
    s.sigma = sigma;
    s.validate();
    return s;
  }

  void validate() const {
    if (!(sigma > 0.0)) throw error(errc::bad_spec, "distribution: sigma must be positive");
    switch (family) {
      case Family::stable:
        if (!(alpha > 0.0) || alpha > 2.0) {
          throw error(errc::bad_spec, "stable: alpha must lie in (0, 2]");
        }
        if (beta != 0.0) throw error(errc::bad_spec, "stable: only beta = 0 supported");
        break;
      case Family::student_t:
        if (!(nu > 0.0)) throw error(errc::bad_spec, "t: nu must be positive");
        break;
      case Family::gpd:
        if (!(xi > 0.0)) throw error(errc::bad_spec, "gpd: xi must be positive");
        break;
    }
  }

  // Tail index targeted by the estimators: stable index, t degrees of
  // freedom, or 1/xi for the GPD.
  double true_alpha() const {
    switch (family) {
      case Family::stable: return alpha;
      case Family::student_t: return nu;
      case Family::gpd: return 1.0 / xi;
    }
    return 0.0;
  }
};

// Symmetric alpha-stable variates via the Chambers-Mallows-Stuck transform
// of U ~ Uniform(-pi/2, pi/2) and an independent unit exponential E; the
// alpha = 1 case is the Cauchy branch sigma*tan(U) + mu.
inline std::vector<double> sample_stable(const DistributionSpec& spec, std::size_t n,
                                         SeededStream& rng) {
  spec.validate();
  if (spec.family != Family::stable) {
    throw error(errc::bad_spec, "sample_stable: spec is not a stable family");
  }
  std::vector<double> out;
  out.reserve(n);
  const double a = spec.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = SeededStream::kPi * (rng.uniform_open01() - 0.5);
    double x;
    if (a == 1.0) {
      x = std::tan(u);
    } else {
      const double e = rng.exponential();
      x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
          std::pow(std::cos((1.0 - a) * u) / e, (1.0 - a) / a);
    }
    out.push_back(spec.mu + spec.sigma * x);
  }
  return out;
}

// mu + sigma*T with T = Z / sqrt(V/nu), V chi-square with nu degrees of
// freedom (2 * gamma(nu/2)).
inline std::vector<double> sample_student_t(const DistributionSpec& spec, std::size_t n,
                                            SeededStream& rng) {
  spec.validate();
  if (spec.family != Family::student_t) {
    throw error(errc::bad_spec, "sample_student_t: spec is not a t family");
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.normal();
    const double v = 2.0 * rng.gamma(0.5 * spec.nu);
    out.push_back(spec.mu + spec.sigma * z / std::sqrt(v / spec.nu));
  }
  return out;
}

// Inverse CDF: mu + sigma*((1-U)^(-xi) - 1)/xi.
inline std::vector<double> sample_gpd(const DistributionSpec& spec, std::size_t n,
                                      SeededStream& rng) {
  spec.validate();
  if (spec.family != Family::gpd) {
    throw error(errc::bad_spec, "sample_gpd: spec is not a gpd family");
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform_open01();
    out.push_back(spec.mu + spec.sigma * (std::pow(1.0 - u, -spec.xi) - 1.0) / spec.xi);
  }
  return out;
}

inline std::vector<double> draw(const DistributionSpec& spec, std::size_t n, SeededStream& rng) {
  switch (spec.family) {
    case Family::stable: return sample_stable(spec, n, rng);
    case Family::student_t: return sample_student_t(spec, n, rng);
    case Family::gpd: return sample_gpd(spec, n, rng);
  }
  throw error(errc::bad_spec, "draw: unknown family");
}

}  // namespace tailavg

#endif  // TAILAVG_DISTRIBUTIONS_HPP
