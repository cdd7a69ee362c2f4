#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace prefsamp {

// Seeded generator with self-contained uniform/normal/Poisson draws, so that
// identical seeds give identical streams independent of the standard library's
// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Exact Poisson count via exponential inter-arrival times; O(mean).
  long poisson(double mean) {
    if (mean <= 0.0) return 0;
    long k = 0;
    double acc = 0.0;
    while (true) {
      acc += -std::log(1.0 - uniform());
      if (acc > mean) return k;
      ++k;
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace prefsamp
