#include "psikit/classify.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "psikit/error.hpp"

namespace psikit {
namespace {

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFinite, fmt::format("{} is not finite", what));
  }
}

Direction resolve_tie(Direction d, TiePolicy policy) {
  if (d != Direction::Tie) return d;
  switch (policy) {
    case TiePolicy::AsUp: return Direction::Up;
    case TiePolicy::AsDown: return Direction::Down;
    case TiePolicy::Error:
      throw Error(ErrorCode::TiePolicy,
                  "zero change encountered and tie policy is 'error'");
    case TiePolicy::Exclude: break;
  }
  return Direction::Tie;
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Up: return "Up";
    case Direction::Down: return "Down";
    case Direction::Tie: return "Tie";
  }
  return "?";
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::UpUpWithin: return "UpUpWithin";
    case Outcome::UpUpOutside: return "UpUpOutside";
    case Outcome::UpDown: return "UpDown";
    case Outcome::DownUp: return "DownUp";
    case Outcome::DownDownWithin: return "DownDownWithin";
    case Outcome::DownDownOutside: return "DownDownOutside";
    case Outcome::Tie: return "Tie";
  }
  return "?";
}

bool period_less(std::string_view lhs, std::string_view rhs) {
  auto l = parse_number(lhs);
  auto r = parse_number(rhs);
  if (l && r) return *l < *r;
  return lhs < rhs;
}

void SeriesPair::validate() const {
  if (forecast.empty()) {
    throw Error(ErrorCode::InvalidArgument, "series has no forecast points");
  }
  if (actual.size() != forecast.size() + 1) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("expected {} actual values for {} forecasts, got {}",
                            forecast.size() + 1, forecast.size(),
                            actual.size()));
  }
  if (!periods.empty()) {
    if (periods.size() != actual.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "period labels must match the actual series length");
    }
    for (std::size_t i = 1; i < periods.size(); ++i) {
      if (!period_less(periods[i - 1], periods[i])) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("periods not strictly increasing at '{}'",
                                periods[i]));
      }
    }
  }
  for (double v : actual) require_finite(v, "actual value");
  for (double v : forecast) require_finite(v, "forecast value");
}

BandSpec parse_band(std::string_view text) {
  if (text == "none") return NoBand{};
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::Parse, fmt::format("unknown band '{}'", text));
  }
  auto kind = text.substr(0, colon);
  auto value = parse_number(text.substr(colon + 1));
  if (!value || !std::isfinite(*value) || *value <= 0.0) {
    throw Error(ErrorCode::Parse,
                fmt::format("band '{}' needs a finite positive value", text));
  }
  if (kind == "fixed") return FixedBand{*value};
  if (kind == "sd") return SdMultipleBand{*value};
  throw Error(ErrorCode::Parse, fmt::format("unknown band '{}'", text));
}

std::string format_band(const BandSpec& band) {
  struct Visitor {
    std::string operator()(NoBand) const { return "none"; }
    std::string operator()(FixedBand b) const {
      return fmt::format("fixed:{}", b.half_width);
    }
    std::string operator()(SdMultipleBand b) const {
      return fmt::format("sd:{}", b.factor);
    }
  };
  return std::visit(Visitor{}, band);
}

Direction direction(double base, double value, double epsilon) {
  require_finite(base, "direction base");
  require_finite(value, "direction value");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "tie epsilon must be >= 0");
  }
  const double change = value - base;
  if (change > epsilon) return Direction::Up;
  if (change < -epsilon) return Direction::Down;
  return Direction::Tie;
}

Outcome classify_point(double prev_actual, double forecast, double actual,
                       const BandSpec& band, double resolved_half_width,
                       const ClassificationConfig& config,
                       std::optional<double> prev_forecast) {
  double forecast_base = prev_actual;
  if (config.direction_base == DirectionBase::PriorForecast && prev_forecast) {
    forecast_base = *prev_forecast;
  }
  const Direction called = resolve_tie(
      direction(forecast_base, forecast, config.tie_epsilon), config.tie_policy);
  const Direction seen = resolve_tie(
      direction(prev_actual, actual, config.tie_epsilon), config.tie_policy);
  if (called == Direction::Tie || seen == Direction::Tie) return Outcome::Tie;

  if (called != seen) {
    return called == Direction::Up ? Outcome::UpDown : Outcome::DownUp;
  }
  const bool within = std::holds_alternative<NoBand>(band) ||
                      std::abs(actual - forecast) <= resolved_half_width;
  if (called == Direction::Up) {
    return within ? Outcome::UpUpWithin : Outcome::UpUpOutside;
  }
  return within ? Outcome::DownDownWithin : Outcome::DownDownOutside;
}

double sd_of_changes(std::span<const double> actual, SdKind kind) {
  if (actual.size() < 3) {
    throw Error(ErrorCode::TooShort,
                "need at least 3 values (2 changes) for a standard deviation");
  }
  const std::size_t m = actual.size() - 1;
  double mean = 0.0;
  for (std::size_t i = 1; i < actual.size(); ++i) {
    mean += actual[i] - actual[i - 1];
  }
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (std::size_t i = 1; i < actual.size(); ++i) {
    const double dev = (actual[i] - actual[i - 1]) - mean;
    ss += dev * dev;
  }
  const double divisor =
      kind == SdKind::Sample ? static_cast<double>(m - 1) : static_cast<double>(m);
  return std::sqrt(ss / divisor);
}

double resolve_half_width(const BandSpec& band, std::span<const double> actual,
                          SdKind kind) {
  if (const auto* fixed = std::get_if<FixedBand>(&band)) {
    if (!(fixed->half_width > 0.0) || !std::isfinite(fixed->half_width)) {
      throw Error(ErrorCode::InvalidArgument, "band half-width must be > 0");
    }
    return fixed->half_width;
  }
  if (const auto* sd = std::get_if<SdMultipleBand>(&band)) {
    if (!(sd->factor > 0.0) || !std::isfinite(sd->factor)) {
      throw Error(ErrorCode::InvalidArgument, "band SD factor must be > 0");
    }
    return sd->factor * sd_of_changes(actual, kind);
  }
  return 0.0;
}

Classification classify_series(const SeriesPair& pair, const BandSpec& band,
                               const ClassificationConfig& config) {
  pair.validate();
  Classification result;
  result.resolved_half_width = resolve_half_width(band, pair.actual, config.sd_kind);
  result.outcomes.reserve(pair.size());
  result.point_index.reserve(pair.size());
  for (std::size_t t = 0; t < pair.size(); ++t) {
    std::optional<double> prev_forecast;
    if (t > 0) prev_forecast = pair.forecast[t - 1];
    const Outcome o =
        classify_point(pair.actual[t], pair.forecast[t], pair.actual[t + 1],
                       band, result.resolved_half_width, config, prev_forecast);
    if (o == Outcome::Tie) {
      ++result.excluded_ties;
      continue;
    }
    result.outcomes.push_back(o);
    result.point_index.push_back(t);
  }
  return result;
}

ContingencyTable BandCounts::to_table() const {
  return ContingencyTable::from_counts(uu_within, up_down + dd_outside,
                                       down_up + uu_outside, dd_within);
}

BandCounts count_outcomes(std::span<const Outcome> outcomes) {
  BandCounts counts;
  for (Outcome o : outcomes) {
    switch (o) {
      case Outcome::UpUpWithin: ++counts.uu_within; break;
      case Outcome::UpUpOutside: ++counts.uu_outside; break;
      case Outcome::UpDown: ++counts.up_down; break;
      case Outcome::DownUp: ++counts.down_up; break;
      case Outcome::DownDownWithin: ++counts.dd_within; break;
      case Outcome::DownDownOutside: ++counts.dd_outside; break;
      case Outcome::Tie:
        throw Error(ErrorCode::InvalidArgument,
                    "unresolved tie cannot enter a contingency table");
    }
  }
  return counts;
}

ContingencyTable to_table(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) {
    throw Error(ErrorCode::AllZero, "no classified outcomes to tabulate");
  }
  return count_outcomes(outcomes).to_table();
}

}  // namespace psikit
