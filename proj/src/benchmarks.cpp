#include "psikit/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "psikit/error.hpp"
#include "psikit/scores.hpp"

namespace psikit {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::OutOfRange,
                fmt::format("{} must lie in [0, 1], got {}", what, p));
  }
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::vector<Direction> generate_directions(const ReferenceForecaster& f,
                                           std::span<const Direction> observed) {
  if (observed.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no observed directions");
  }
  std::vector<Direction> out;
  out.reserve(observed.size());
  if (const auto* random = std::get_if<RandomForecaster>(&f)) {
    require_probability(random->p_up, "p_up");
    TrialRng rng(random->seed, 0);
    for (std::size_t i = 0; i < observed.size(); ++i) {
      out.push_back(rng.bernoulli(random->p_up) ? Direction::Up : Direction::Down);
    }
  } else if (std::holds_alternative<AlwaysUp>(f)) {
    out.assign(observed.size(), Direction::Up);
  } else if (std::holds_alternative<AlwaysDown>(f)) {
    out.assign(observed.size(), Direction::Down);
  } else {
    const auto& persist = std::get<NoChange>(f);
    if (persist.first_step == FirstStep::RepeatFirstObserved) {
      out.push_back(observed.front());
    }
    for (std::size_t i = 1; i < observed.size(); ++i) {
      out.push_back(observed[i - 1]);
    }
  }
  return out;
}

std::vector<double> no_change_forecast(std::span<const double> actual) {
  if (actual.size() < 2) {
    throw Error(ErrorCode::TooShort, "need a base value and one realization");
  }
  return {actual.begin(), actual.end() - 1};
}

ContingencyTable tabulate(std::span<const Direction> forecast,
                          std::span<const Direction> observed) {
  if (forecast.size() != observed.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "forecast and observed direction lists differ in length");
  }
  Count a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < forecast.size(); ++i) {
    const Direction f = forecast[i];
    const Direction o = observed[i];
    if (f == Direction::Tie || o == Direction::Tie) {
      throw Error(ErrorCode::InvalidArgument, "ties cannot be tabulated");
    }
    if (f == Direction::Up) {
      (o == Direction::Up ? a : b)++;
    } else {
      (o == Direction::Up ? c : d)++;
    }
  }
  return ContingencyTable::from_counts(a, b, c, d);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~trial))) {}

double TrialRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) {
    throw Error(ErrorCode::InvalidArgument, "quantile of an empty sample");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::OutOfRange,
                fmt::format("quantile level must lie in (0, 1), got {}", q));
  }
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

NullDistributionSummary null_distribution(const NullDistributionOptions& opts) {
  if (opts.n < 2) {
    throw Error(ErrorCode::InvalidArgument, "null distribution needs n >= 2");
  }
  if (opts.trials < 1) {
    throw Error(ErrorCode::InvalidArgument, "null distribution needs trials >= 1");
  }
  require_probability(opts.p_up_observed, "observed p_up");
  require_probability(opts.p_up_forecast, "forecast p_up");
  for (double q : opts.quantiles) {
    if (!(q > 0.0 && q < 1.0)) {
      throw Error(ErrorCode::OutOfRange,
                  fmt::format("quantile level must lie in (0, 1), got {}", q));
    }
  }

  std::vector<double> values(opts.trials);
  auto run_trial = [&](std::uint64_t trial) {
    TrialRng rng(opts.seed, trial);
    Count a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < opts.n; ++i) {
      const bool observed_up = rng.bernoulli(opts.p_up_observed);
      const bool forecast_up = rng.bernoulli(opts.p_up_forecast);
      if (forecast_up) {
        (observed_up ? a : b)++;
      } else {
        (observed_up ? c : d)++;
      }
    }
    values[trial] = psi(ContingencyTable::from_counts(a, b, c, d));
  };

  unsigned threads = opts.threads != 0 ? opts.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, opts.trials));
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::uint64_t t = w; t < opts.trials; t += threads) run_trial(t);
      });
    }
  }

  NullDistributionSummary summary;
  summary.trials = opts.trials;
  CompensatedSum total;
  for (double v : values) total.add(v);
  summary.mean_psi = total.value() / static_cast<double>(opts.trials);
  if (opts.trials > 1) {
    CompensatedSum ss;
    for (double v : values) {
      const double dev = v - summary.mean_psi;
      ss.add(dev * dev);
    }
    summary.sd_psi =
        std::sqrt(ss.value() / static_cast<double>(opts.trials - 1));
  }
  std::sort(values.begin(), values.end());
  for (double q : opts.quantiles) summary.quantiles[q] = quantile(values, q);
  return summary;
}

}  // namespace psikit
