#pragma once

#include <stdexcept>
#include <string>

namespace n2e {

// Malformed input data (edge lists, config files).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A privacy-budget charge would exceed the ledger total.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown or iteration blow-up inside the LP solver.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for an exact (brute-force) oracle.
class OracleLimitError : public std::runtime_error {
public:
  explicit OracleLimitError(const std::string& what) : std::runtime_error(what) {}
};

// A mechanism was invoked outside its declared precondition.
class ContractError : public std::runtime_error {
public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace n2e
