#include "n2e/budget.hpp"

#include <stdexcept>

#include "n2e/errors.hpp"

namespace n2e {

namespace {
// Absorbs floating-point rounding when charges were derived from fractions
// of the total; anything larger than this is a real overspend.
constexpr double kSlack = 1e-9;
}  // namespace

PrivacyParams::PrivacyParams(double eps, double del, double bet)
    : epsilon(eps), delta(del), beta(bet) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("delta must be in [0,1)");
  if (!(beta > 0.0) || beta >= 1.0) throw std::invalid_argument("beta must be in (0,1)");
}

PrivacyParams group_privacy_scale(const PrivacyParams& p, int lambda) {
  if (lambda < 1) throw std::invalid_argument("group privacy: lambda must be >= 1");
  PrivacyParams out = p;
  out.epsilon = p.epsilon / lambda;
  out.delta = p.delta / lambda;
  return out;
}

void BudgetLedger::charge(const std::string& label, double epsilon, double delta, double beta) {
  if (epsilon < 0.0 || delta < 0.0) throw std::invalid_argument("negative charge");
  const double eps_after = spent_eps_ + epsilon;
  const double delta_after = spent_delta_ + delta;
  if (eps_after > total_.epsilon + kSlack)
    throw BudgetError("epsilon budget exceeded by charge \"" + label + "\"");
  if (delta_after > total_.delta + kSlack)
    throw BudgetError("delta budget exceeded by charge \"" + label + "\"");
  spent_eps_ = eps_after;
  spent_delta_ = delta_after;
  charges_.push_back({label, epsilon, delta, beta});
}

}  // namespace n2e
