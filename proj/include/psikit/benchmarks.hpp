#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "psikit/classify.hpp"

namespace psikit {

struct RandomForecaster {
  double p_up = 0.5;
  std::uint64_t seed = 0;
};
struct AlwaysUp {};
struct AlwaysDown {};

enum class FirstStep { RepeatFirstObserved, Exclude };

/// Persistence of direction: repeats the previously observed direction.
struct NoChange {
  FirstStep first_step = FirstStep::RepeatFirstObserved;
};

using ReferenceForecaster =
    std::variant<RandomForecaster, AlwaysUp, AlwaysDown, NoChange>;

/// One forecast direction per observed direction. Under NoChange with
/// FirstStep::Exclude the result is one element shorter (the first step has
/// no prior observation).
std::vector<Direction> generate_directions(const ReferenceForecaster& f,
                                           std::span<const Direction> observed);

/// Value-level persistence forecast F_t = A_{t-1}: predicts no change at
/// every step. Every forecast direction is therefore a tie, and how it
/// scores depends on the tie policy.
std::vector<double> no_change_forecast(std::span<const double> actual);

/// Cross-tabulates forecast against observed directions (no band).
ContingencyTable tabulate(std::span<const Direction> forecast,
                          std::span<const Direction> observed);

/// Random stream for one Monte Carlo trial, derived from (seed, trial) alone
/// so results do not depend on how trials are scheduled.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

struct NullDistributionSummary {
  std::uint64_t trials = 0;
  double mean_psi = 0.0;
  double sd_psi = 0.0;
  std::map<double, double> quantiles;
};

struct NullDistributionOptions {
  std::size_t n = 400;
  double p_up_observed = 0.5;
  double p_up_forecast = 0.5;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::vector<double> quantiles = {0.025, 0.5, 0.975};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// PSI of independent random forecasts against independent random
/// observations. Identical options give bit-identical summaries for any
/// thread count.
NullDistributionSummary null_distribution(const NullDistributionOptions& opts);

/// Linear interpolation between order statistics; `sorted` must be sorted.
double quantile(std::span<const double> sorted, double q);

}  // namespace psikit
