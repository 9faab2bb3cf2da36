#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "loopbp/errors.hpp"

namespace loopbp {

// A nonnegative scalar kept as sign * exp(log_magnitude) to survive long
// products of small numbers. sign is 0 or 1.
class LogScaledScalar {
 public:
  LogScaledScalar() : zero_(true), log_(0.0) {}
  static LogScaledScalar from_value(double v) {
    if (v < 0.0 || !std::isfinite(v)) throw DimensionMismatch("LogScaledScalar requires a finite nonnegative value");
    LogScaledScalar s;
    if (v > 0.0) {
      s.zero_ = false;
      s.log_ = std::log(v);
    }
    return s;
  }
  static LogScaledScalar from_log(double log_magnitude) {
    LogScaledScalar s;
    s.zero_ = false;
    s.log_ = log_magnitude;
    return s;
  }
  static LogScaledScalar zero() { return LogScaledScalar(); }
  static LogScaledScalar one() { return from_log(0.0); }

  bool is_zero() const { return zero_; }
  double log() const {
    if (zero_) throw ZeroTensor("log of zero LogScaledScalar");
    return log_;
  }
  double value() const { return zero_ ? 0.0 : std::exp(log_); }

  LogScaledScalar& operator*=(const LogScaledScalar& o) {
    if (zero_ || o.zero_) {
      zero_ = true;
      log_ = 0.0;
    } else {
      log_ += o.log_;
    }
    return *this;
  }
  friend LogScaledScalar operator*(LogScaledScalar a, const LogScaledScalar& b) { return a *= b; }
  LogScaledScalar pow(double e) const {
    if (zero_) return zero();
    return from_log(log_ * e);
  }

 private:
  bool zero_;
  double log_;
};

// One tensor axis: the variable it ranges over and that variable's dimension.
struct Axis {
  int var;
  int dim;
  friend bool operator==(const Axis&, const Axis&) = default;
};

// Dense row-major tensor whose axes carry variable identities. The universal
// value carrier for factor tables, messages and beliefs.
class LabeledTensor {
 public:
  LabeledTensor() : values_(1, 1.0) {}  // scalar 1

  LabeledTensor(std::vector<Axis> axes, std::vector<double> values) : axes_(std::move(axes)), values_(std::move(values)) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      if (axes_[i].dim < 1) throw ShapeMismatch("axis dimension must be >= 1");
      for (std::size_t j = i + 1; j < axes_.size(); ++j)
        if (axes_[i].var == axes_[j].var) throw ShapeMismatch("duplicate variable among tensor axes");
      n *= static_cast<std::size_t>(axes_[i].dim);
    }
    if (values_.size() != n) throw ShapeMismatch("value count does not match axis dimensions");
  }

  static LabeledTensor scalar(double v) { return LabeledTensor({}, {v}); }
  static LabeledTensor uniform(std::vector<Axis> axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.dim);
    return LabeledTensor(std::move(axes), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  static LabeledTensor ones(std::vector<Axis> axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.dim);
    return LabeledTensor(std::move(axes), std::vector<double>(n, 1.0));
  }

  const std::vector<Axis>& axes() const { return axes_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  int rank() const { return static_cast<int>(axes_.size()); }
  bool is_scalar() const { return axes_.empty(); }

  bool has_axis(int var) const {
    for (const auto& a : axes_)
      if (a.var == var) return true;
    return false;
  }
  int axis_index(int var) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
      if (axes_[i].var == var) return static_cast<int>(i);
    throw DimensionMismatch("tensor has no axis for requested variable");
  }

  double sum() const {
    double acc = 0.0, c = 0.0;  // Kahan
    for (double v : values_) {
      double y = v - c;
      double t = acc + y;
      c = (t - acc) - y;
      acc = t;
    }
    return acc;
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  void scale(double c) {
    for (double& v : values_) v *= c;
  }

  // Entrywise log with the 0 -> -inf convention left to the caller: entries
  // must be > 0 where visited. Used only through expectation helpers.
  double value_at(std::span<const int> assignment) const;

  // Checks entries are finite and, when require_nonneg, >= 0.
  void validate_entries(bool require_nonneg) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

struct ContractOptions {
  std::size_t memory_budget_entries = std::size_t{1} << 26;
};

// Sum-of-products contraction of a tensor set. The result's axes are exactly
// `keep` (sorted by variable id); all other axes are summed over. Shared
// variables are identified einsum-style. Greedy pairwise order: always
// contract the pair whose intermediate has the fewest entries.
LabeledTensor contract(std::vector<LabeledTensor> tensors, const std::vector<int>& keep, const ContractOptions& opts = {});

// contract(..., keep = {}) as a log-scaled scalar; exact for disconnected
// inputs too (disjoint tensor sets multiply).
LogScaledScalar full_trace(std::vector<LabeledTensor> tensors, const ContractOptions& opts = {});

// L1 normalization: returns a unit-sum tensor plus the stripped constant.
// Throws ZeroTensor when every entry is zero.
std::pair<LabeledTensor, LogScaledScalar> normalize(const LabeledTensor& t);

}  // namespace loopbp
