#pragma once

#include <stdexcept>
#include <string>

namespace qasym {

/// A machine or distribution failed structural validation.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource budget was exhausted (belief-state expansion).
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Word enumeration exceeded the configured node cap.
struct EnumerationCapError : std::runtime_error {
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qasym
