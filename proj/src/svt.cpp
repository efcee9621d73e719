#include "n2e/svt.hpp"

#include <stdexcept>

namespace n2e {

std::optional<int> sparse_vector(const SvtOptions& opt, int query_count,
                                 const std::function<double(int)>& query,
                                 NoiseSource& noise) {
  if (!(opt.epsilon > 0.0)) throw std::invalid_argument("svt: epsilon must be > 0");
  if (opt.c != 1 && opt.c != 2) throw std::invalid_argument("svt: c must be 1 or 2");
  const double noisy_threshold = opt.threshold + noise.laplace(2.0 / opt.epsilon);
  for (int i = 1; i <= query_count; ++i) {
    const double noisy_q = query(i) + noise.laplace(2.0 * opt.c / opt.epsilon);
    if (noisy_q > noisy_threshold) return i;
  }
  return std::nullopt;
}

}  // namespace n2e
