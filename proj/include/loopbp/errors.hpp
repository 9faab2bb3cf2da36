#pragma once

#include <stdexcept>
#include <string>

namespace loopbp {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input validation failures (graph construction, file parsing).
struct ValidationError : Error {
  using Error::Error;
};

struct ShapeMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct NegativeEntry : ValidationError {
  using ValidationError::ValidationError;
};
struct UnknownVariable : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptyGraph : ValidationError {
  using ValidationError::ValidationError;
};
struct DisconnectedGraph : ValidationError {
  using ValidationError::ValidationError;
};
struct ParseError : ValidationError {
  using ValidationError::ValidationError;
};
struct InconsistentSpec : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidSize : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidTemperature : ValidationError {
  using ValidationError::ValidationError;
};

// Requested operation does not apply to the graph's class.
struct ClassMismatch : Error {
  using Error::Error;
};

// Tensor algebra failures.
struct DimensionMismatch : Error {
  using Error::Error;
};
struct ZeroTensor : Error {
  using Error::Error;
};

// Resource budgets.
struct MemoryBudgetExceeded : Error {
  using Error::Error;
};
struct EnumerationBudgetExceeded : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct AlphabetBlowupExceeded : Error {
  using Error::Error;
};

// Graph lookups.
struct NodeNotFound : Error {
  using Error::Error;
};
struct NotInNeighborhood : Error {
  using Error::Error;
};

// Inference failures.
struct RescaleImpossible : Error {
  using Error::Error;
};
struct InconsistentSyndrome : Error {
  using Error::Error;
};

}  // namespace loopbp
