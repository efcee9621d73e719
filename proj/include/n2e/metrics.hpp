#pragma once

#include <vector>

namespace n2e {

// 100 * |est - truth| / |truth|; truth must be nonzero.
double relative_error(double est, double truth);

// Number of degrees strictly above the estimate; when the estimate exceeds
// the maximum degree, the absolute overshoot instead.
double rank_error(double est, const std::vector<int>& degrees);

// Sum of absolute per-bin differences; layouts must match.
double l1_histogram(const std::vector<double>& est, const std::vector<double>& truth);

// Trimmed mean: drop the 2 highest and 2 lowest values (requires >= 5).
double trimmed_mean(std::vector<double> values);
double sample_std(const std::vector<double>& values);

}  // namespace n2e
