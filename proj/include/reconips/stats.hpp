#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reconips/rng.hpp"

namespace reconips {

// Per-seed means are the independent unit for every interval we report.
struct SeedSeries {
  std::string metric;
  std::vector<std::pair<uint64_t, double>> values;  // (seed, per-seed mean)
};

struct BootstrapResult {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Percentile bootstrap over seed-level values. Quantiles use the nearest-rank
// convention, so interval endpoints are always realized resample means.
BootstrapResult bootstrap_ci(const SeedSeries& series, int resamples, double level,
                             Rng& rng);

BootstrapResult bootstrap_ci(const SeedSeries& series, Rng& rng);  // 2000, 0.95

double median_of(std::vector<double> values);

}  // namespace reconips
