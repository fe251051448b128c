#pragma once

#include <optional>
#include <string>
#include <vector>

namespace psikit {

/// sqrt((x^2 + y^2) / 2) for x, y in [0, 1].
double composite_index(double x, double y);

struct CompositeComponent {
  std::string label;
  double psi = 0.0;
};

struct CompositeInput {
  std::vector<CompositeComponent> components;
  /// Optional weights; positive and summing to 1. Empty means 1/N each.
  std::vector<double> weights;

  void validate() const;
};

struct ComponentResult {
  std::string label;
  double psi = 0.0;
  double skill_percent = 0.0;
  double weight = 0.0;
};

struct CompositeResult {
  double joint = 0.0;
  double joint_skill_percent = 0.0;
  std::vector<ComponentResult> per_component;
};

/// Joint multi-variable index: each PSI is shifted into [0, 2], combined by
/// (weighted) root mean square and shifted back:
///
///   joint = sqrt(sum_j w_j (1 + psi_j)^2) - 1,   w_j = 1/N by default.
///
/// Components outside [-1, 1] are rejected, never clamped.
CompositeResult psi_n(const CompositeInput& input);

/// Convenience overload for unlabeled, equally weighted components.
double psi_n(const std::vector<double>& components);

}  // namespace psikit
