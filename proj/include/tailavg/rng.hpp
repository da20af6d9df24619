#ifndef TAILAVG_RNG_HPP
#define TAILAVG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace tailavg {

// One reproducible replicate stream: a mt19937_64 (period 2^19937 - 1)
// seeded from the (master_seed, stream_id) pair. Distinct pairs give
// non-overlapping sequences for all practical purposes; identical pairs
// reproduce bit-identically.
class SeededStream {
 public:
  static constexpr const char* generator_name = "mt19937_64";

  SeededStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t raw() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution; zero rejected
  // so logs of either u or 1-u stay finite.
  double uniform_open01() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double exponential() { return -std::log(uniform_open01()); }

  // Box-Muller pair, one variate cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
    const double t = 2.0 * kPi * uniform_open01();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // Marsaglia-Tsang gamma variate, unit scale, any shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform_open01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  static constexpr double kPi = 3.14159265358979323846;

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace tailavg

#endif  // TAILAVG_RNG_HPP
