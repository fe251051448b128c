#include "psikit/composite.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "psikit/error.hpp"
#include "psikit/scores.hpp"

namespace psikit {

double composite_index(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::OutOfRange,
                fmt::format("composite index inputs must lie in [0, 1], got "
                            "({}, {})",
                            x, y));
  }
  return std::sqrt((x * x + y * y) / 2.0);
}

void CompositeInput::validate() const {
  if (components.empty()) {
    throw Error(ErrorCode::InvalidArgument, "composite needs a component");
  }
  for (const auto& c : components) {
    if (!(c.psi >= -1.0 && c.psi <= 1.0)) {
      throw Error(ErrorCode::OutOfRange,
                  fmt::format("component '{}' PSI {} outside [-1, 1]", c.label,
                              c.psi));
    }
  }
  if (weights.empty()) return;
  if (weights.size() != components.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} weights given for {} components",
                            weights.size(), components.size()));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("weights sum to {}, expected 1", sum));
  }
}

CompositeResult psi_n(const CompositeInput& input) {
  input.validate();
  const std::size_t count = input.components.size();
  CompositeResult result;
  result.per_component.reserve(count);

  // Equal weights divide once at the end so that identical components
  // reproduce their value exactly.
  double sum = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const auto& c = input.components[j];
    const double shifted = 1.0 + c.psi;
    const double w =
        input.weights.empty() ? 1.0 / static_cast<double>(count) : input.weights[j];
    sum += input.weights.empty() ? shifted * shifted : w * shifted * shifted;
    result.per_component.push_back({c.label, c.psi, skill_score(c.psi), w});
  }
  const double mean_sq =
      input.weights.empty() ? sum / static_cast<double>(count) : sum;
  // Rounding can push the result a hair past the bounds at the extremes.
  result.joint = std::clamp(std::sqrt(mean_sq) - 1.0, -1.0, 1.0);
  result.joint_skill_percent = skill_score(result.joint);
  return result;
}

double psi_n(const std::vector<double>& components) {
  CompositeInput input;
  input.components.reserve(components.size());
  for (double v : components) input.components.push_back({"", v});
  return psi_n(input).joint;
}

}  // namespace psikit
