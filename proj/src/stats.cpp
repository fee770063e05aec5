#include "reconips/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reconips {

BootstrapResult bootstrap_ci(const SeedSeries& series, int resamples,
                             double level, Rng& rng) {
  size_t n = series.values.size();
  if (n == 0) throw std::invalid_argument("empty seed series");

  double mean = 0.0;
  for (const auto& [seed, v] : series.values) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> means(static_cast<size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
      sum += series.values[static_cast<size_t>(rng.bounded(n))].second;
    means[static_cast<size_t>(r)] = sum / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());

  auto quantile = [&](double q) {
    size_t rank = static_cast<size_t>(
        std::ceil(q * static_cast<double>(means.size())));
    if (rank == 0) rank = 1;
    if (rank > means.size()) rank = means.size();
    return means[rank - 1];
  };
  double alpha = 1.0 - level;
  BootstrapResult out;
  out.mean = mean;
  out.ci_low = quantile(alpha / 2.0);
  out.ci_high = quantile(1.0 - alpha / 2.0);
  return out;
}

BootstrapResult bootstrap_ci(const SeedSeries& series, Rng& rng) {
  return bootstrap_ci(series, 2000, 0.95, rng);
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace reconips
