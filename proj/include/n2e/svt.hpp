#pragma once

#include <functional>
#include <optional>

#include "n2e/noise.hpp"

namespace n2e {

// Sparse vector technique over a lazy ordered query sequence. Queries are
// evaluated one by one; the first whose noised value strictly exceeds the
// noised threshold wins, and its 1-based index is returned. Draw order:
// one draw for the threshold, then one per evaluated query.
//
// c = 2 is the general setting; c = 1 is valid only when the caller asserts
// the query sequence is sensitivity-monotonic (the value never increases
// when the input grows by one neighbor step).
//
// Returns std::nullopt if the sequence is exhausted without firing; the
// caller decides the fallback.
struct SvtOptions {
  double threshold = 0.0;
  double epsilon = 0.0;
  int c = 2;  // 1 or 2
};

std::optional<int> sparse_vector(const SvtOptions& opt, int query_count,
                                 const std::function<double(int)>& query,  // 1-based index
                                 NoiseSource& noise);

}  // namespace n2e
