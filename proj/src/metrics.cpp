#include "n2e/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace n2e {

double relative_error(double est, double truth) {
  if (truth == 0.0) throw std::invalid_argument("relative_error: truth is zero");
  return 100.0 * std::abs(est - truth) / std::abs(truth);
}

double rank_error(double est, const std::vector<int>& degrees) {
  if (degrees.empty()) throw std::invalid_argument("rank_error: empty degree multiset");
  int max_deg = degrees[0];
  for (int d : degrees) max_deg = std::max(max_deg, d);
  if (est > max_deg) return est - max_deg;
  double count = 0.0;
  for (int d : degrees)
    if (d > est) count += 1.0;
  return count;
}

double l1_histogram(const std::vector<double>& est, const std::vector<double>& truth) {
  if (est.size() != truth.size())
    throw std::invalid_argument("l1_histogram: bin layouts differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) sum += std::abs(est[i] - truth[i]);
  return sum;
}

double trimmed_mean(std::vector<double> values) {
  if (values.size() < 5)
    throw std::invalid_argument("trimmed_mean: need at least 5 values to trim 2+2");
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (std::size_t i = 2; i + 2 < values.size(); ++i) sum += values[i];
  return sum / static_cast<double>(values.size() - 4);
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace n2e
