#pragma once

#include <string>
#include <vector>

namespace n2e {

// (epsilon, delta) privacy budget plus the error failure probability beta.
// beta is a utility parameter only; it never gates the ledger.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double beta = 0.0;

  PrivacyParams() = default;
  PrivacyParams(double eps, double del, double bet);
};

// Per-unit budget such that lambda-fold group privacy recovers (eps, delta).
PrivacyParams group_privacy_scale(const PrivacyParams& p, int lambda);

struct BudgetCharge {
  std::string label;
  double epsilon = 0.0;
  double delta = 0.0;
  double beta = 0.0;  // informational
};

// Sequential-composition accounting: the sum of charges must never exceed
// the totals. Charges that would overspend throw BudgetError and leave the
// ledger unchanged.
class BudgetLedger {
public:
  explicit BudgetLedger(PrivacyParams total) : total_(total) {}

  void charge(const std::string& label, double epsilon, double delta, double beta = 0.0);

  double spent_epsilon() const { return spent_eps_; }
  double spent_delta() const { return spent_delta_; }
  const PrivacyParams& total() const { return total_; }
  const std::vector<BudgetCharge>& charges() const { return charges_; }

private:
  PrivacyParams total_;
  double spent_eps_ = 0.0;
  double spent_delta_ = 0.0;
  std::vector<BudgetCharge> charges_;
};

}  // namespace n2e
