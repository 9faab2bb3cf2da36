#include "loopbp/tensor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace loopbp {

namespace {

// Combined-axis walk: one odometer over a merged axis list, with per-operand
// strides (0 where the operand lacks the axis).
struct AxisPlan {
  std::vector<Axis> axes;
  std::vector<std::size_t> stride_a, stride_b, stride_out;
};

std::vector<std::size_t> row_major_strides(const std::vector<Axis>& axes) {
  std::vector<std::size_t> s(axes.size(), 1);
  for (int i = static_cast<int>(axes.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * static_cast<std::size_t>(axes[i + 1].dim);
  return s;
}

std::size_t entry_count(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.dim);
  return n;
}

// Contract a pair, summing over `summed` axes; result axes sorted by var id.
LabeledTensor pair_contract(const LabeledTensor& a, const LabeledTensor& b, const std::vector<int>& summed, const ContractOptions& opts) {
  std::map<int, int> dims;  // var -> dim, also validates shared dims
  for (const auto& ax : a.axes()) dims[ax.var] = ax.dim;
  for (const auto& ax : b.axes()) {
    auto [it, inserted] = dims.emplace(ax.var, ax.dim);
    if (!inserted && it->second != ax.dim) throw DimensionMismatch("shared variable has unequal dimensions");
  }

  std::vector<Axis> out_axes, sum_axes;
  for (const auto& [var, dim] : dims) {
    if (std::find(summed.begin(), summed.end(), var) != summed.end())
      sum_axes.push_back({var, dim});
    else
      out_axes.push_back({var, dim});
  }
  if (entry_count(out_axes) > opts.memory_budget_entries) throw MemoryBudgetExceeded("contraction intermediate exceeds memory budget");

  std::vector<Axis> walk = out_axes;
  walk.insert(walk.end(), sum_axes.begin(), sum_axes.end());

  auto strides_for = [&](const LabeledTensor& t) {
    std::vector<std::size_t> own = row_major_strides(t.axes());
    std::vector<std::size_t> s(walk.size(), 0);
    for (std::size_t i = 0; i < walk.size(); ++i)
      for (std::size_t j = 0; j < t.axes().size(); ++j)
        if (t.axes()[j].var == walk[i].var) s[i] = own[j];
    return s;
  };
  std::vector<std::size_t> sa = strides_for(a), sb = strides_for(b);
  std::vector<std::size_t> so(walk.size(), 0);
  {
    std::vector<std::size_t> own = row_major_strides(out_axes);
    for (std::size_t i = 0; i < out_axes.size(); ++i) so[i] = own[i];
  }

  std::vector<double> out(entry_count(out_axes), 0.0);
  std::vector<int> idx(walk.size(), 0);
  std::size_t oa = 0, ob = 0, oo = 0;
  const std::span<const double> va = a.values(), vb = b.values();
  while (true) {
    out[oo] += va[oa] * vb[ob];
    int k = static_cast<int>(walk.size()) - 1;
    for (; k >= 0; --k) {
      ++idx[k];
      oa += sa[k];
      ob += sb[k];
      oo += so[k];
      if (idx[k] < walk[k].dim) break;
      oa -= sa[k] * static_cast<std::size_t>(walk[k].dim);
      ob -= sb[k] * static_cast<std::size_t>(walk[k].dim);
      oo -= so[k] * static_cast<std::size_t>(walk[k].dim);
      idx[k] = 0;
    }
    if (k < 0) break;
  }
  return LabeledTensor(std::move(out_axes), std::move(out));
}

// Sum out `summed` axes of a single tensor; result axes sorted by var id.
LabeledTensor sum_out(const LabeledTensor& t, const std::vector<int>& summed, const ContractOptions& opts) {
  return pair_contract(t, LabeledTensor::scalar(1.0), summed, opts);
}

}  // namespace

double LabeledTensor::value_at(std::span<const int> assignment) const {
  if (assignment.size() != axes_.size()) throw DimensionMismatch("assignment length does not match rank");
  std::size_t off = 0, stride = 1;
  for (int i = static_cast<int>(axes_.size()) - 1; i >= 0; --i) {
    off += static_cast<std::size_t>(assignment[i]) * stride;
    stride *= static_cast<std::size_t>(axes_[i].dim);
  }
  return values_[off];
}

void LabeledTensor::validate_entries(bool require_nonneg) const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ShapeMismatch("tensor entry is not finite");
    if (require_nonneg && v < 0.0) throw NegativeEntry("tensor entry is negative");
  }
}

LabeledTensor contract(std::vector<LabeledTensor> tensors, const std::vector<int>& keep, const ContractOptions& opts) {
  if (tensors.empty()) return LabeledTensor::scalar(1.0);

  // Axis use counts decide which axes a pairwise step may sum over: an axis
  // is summable once only the two operands (and not `keep`) reference it.
  std::map<int, int> use_count;
  for (const auto& t : tensors)
    for (const auto& ax : t.axes()) ++use_count[ax.var];
  for (int var : keep) ++use_count[var];

  auto summable = [&](const LabeledTensor& a, const LabeledTensor& b) {
    std::vector<int> s;
    for (const auto& ax : a.axes()) {
      int uses = use_count[ax.var];
      if (b.has_axis(ax.var)) {
        if (uses == 2) s.push_back(ax.var);
      } else if (uses == 1) {
        s.push_back(ax.var);
      }
    }
    for (const auto& ax : b.axes())
      if (!a.has_axis(ax.var) && use_count[ax.var] == 1) s.push_back(ax.var);
    return s;
  };

  while (tensors.size() > 1) {
    // Pick the pair with the smallest result entry count; break ties toward
    // the earliest pair for determinism.
    std::size_t best_i = 0, best_j = 1;
    std::size_t best_entries = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      for (std::size_t j = i + 1; j < tensors.size(); ++j) {
        std::vector<int> s = summable(tensors[i], tensors[j]);
        std::map<int, int> dims;
        for (const auto& ax : tensors[i].axes()) dims[ax.var] = ax.dim;
        for (const auto& ax : tensors[j].axes()) dims[ax.var] = ax.dim;
        std::size_t n = 1;
        for (const auto& [var, dim] : dims)
          if (std::find(s.begin(), s.end(), var) == s.end()) n *= static_cast<std::size_t>(dim);
        if (n < best_entries) {
          best_entries = n;
          best_i = i;
          best_j = j;
        }
      }
    }
    std::vector<int> s = summable(tensors[best_i], tensors[best_j]);
    std::vector<int> shared;
    for (const auto& ax : tensors[best_i].axes())
      if (tensors[best_j].has_axis(ax.var) && std::find(s.begin(), s.end(), ax.var) == s.end()) shared.push_back(ax.var);
    LabeledTensor merged = pair_contract(tensors[best_i], tensors[best_j], s, opts);
    for (int var : s) use_count.erase(var);
    for (int var : shared) --use_count[var];  // two refs became one
    tensors.erase(tensors.begin() + static_cast<std::ptrdiff_t>(best_j));
    tensors[best_i] = std::move(merged);
  }

  // Sum out any leftover axes not requested.
  std::vector<int> leftovers;
  for (const auto& ax : tensors[0].axes())
    if (std::find(keep.begin(), keep.end(), ax.var) == keep.end()) leftovers.push_back(ax.var);
  LabeledTensor result = leftovers.empty() ? std::move(tensors[0]) : sum_out(tensors[0], leftovers, opts);
  for (int var : keep)
    if (!result.has_axis(var)) throw DimensionMismatch("keep set references a variable absent from the inputs");
  return result;
}

LogScaledScalar full_trace(std::vector<LabeledTensor> tensors, const ContractOptions& opts) {
  // Normalize each input first so intermediate sums stay in range, carrying
  // the stripped constants in log space.
  LogScaledScalar scale = LogScaledScalar::one();
  std::vector<LabeledTensor> normed;
  normed.reserve(tensors.size());
  for (auto& t : tensors) {
    double s = t.sum();
    if (s < 0.0 || !std::isfinite(s)) throw DimensionMismatch("full_trace requires finite nonnegative tensors");
    double m = t.max_abs();
    if (m == 0.0) return LogScaledScalar::zero();
    scale *= LogScaledScalar::from_value(m);
    LabeledTensor c = t;
    c.scale(1.0 / m);
    normed.push_back(std::move(c));
  }
  LabeledTensor r = contract(std::move(normed), {}, opts);
  double v = r.values()[0];
  if (v <= 0.0) return LogScaledScalar::zero();
  return scale * LogScaledScalar::from_value(v);
}

std::pair<LabeledTensor, LogScaledScalar> normalize(const LabeledTensor& t) {
  double s = t.sum();
  if (s <= 0.0) throw ZeroTensor("cannot normalize a tensor with no positive entry");
  LabeledTensor u = t;
  u.scale(1.0 / s);
  return {std::move(u), LogScaledScalar::from_value(s)};
}

}  // namespace loopbp
