#pragma once

#include <stdexcept>
#include <string>

namespace mpdist {

/// Bad input: malformed arguments, violated preconditions, dimension
/// mismatches. The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// An instance is larger than the configured pair or point budget.
class BudgetExceeded : public UsageError {
public:
    explicit BudgetExceeded(const std::string& what) : UsageError(what) {}
};

/// An internal consistency check failed (e.g. fast path disagrees with brute
/// force). The CLI maps this to exit code 1.
class InvariantFailure : public std::logic_error {
public:
    explicit InvariantFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mpdist
