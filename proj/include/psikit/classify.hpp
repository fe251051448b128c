#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psikit/contingency.hpp"

namespace psikit {

enum class Direction { Up, Down, Tie };

std::string_view to_string(Direction d) noexcept;

/// Observed/forecast direction categories of the banded contingency layout.
/// Read as "<forecast><observed>", so `DownUp` is a forecast of Down that
/// verified Up (a miss).
enum class Outcome {
  UpUpWithin,
  UpUpOutside,
  UpDown,
  DownUp,
  DownDownWithin,
  DownDownOutside,
  Tie,
};

std::string_view to_string(Outcome o) noexcept;

/// Aligned series. `actual` holds T+1 values: actual[0] is the base period
/// and forecast[t] is the forecast of actual[t + 1]. `periods` labels the
/// actual values and therefore also has T+1 entries.
struct SeriesPair {
  std::vector<std::string> periods;
  std::vector<double> actual;
  std::vector<double> forecast;

  std::size_t size() const noexcept { return forecast.size(); }

  /// Throws InvalidArgument when the length or ordering invariants fail.
  void validate() const;
};

/// Period ordering: numeric when both labels parse as numbers, otherwise
/// lexicographic.
bool period_less(std::string_view lhs, std::string_view rhs);

struct NoBand {
  friend bool operator==(NoBand, NoBand) = default;
};
struct FixedBand {
  double half_width;  // percent
  friend bool operator==(FixedBand, FixedBand) = default;
};
struct SdMultipleBand {
  double factor;
  friend bool operator==(SdMultipleBand, SdMultipleBand) = default;
};

using BandSpec = std::variant<NoBand, FixedBand, SdMultipleBand>;

/// Parses `none`, `fixed:<x>` or `sd:<k>`; x and k must be finite and > 0.
BandSpec parse_band(std::string_view text);
std::string format_band(const BandSpec& band);

enum class TiePolicy { Exclude, AsUp, AsDown, Error };
enum class DirectionBase { PriorActual, PriorForecast };
enum class SdKind { Sample, Population };

struct ClassificationConfig {
  double tie_epsilon = 0.0;
  TiePolicy tie_policy = TiePolicy::Exclude;
  DirectionBase direction_base = DirectionBase::PriorActual;
  SdKind sd_kind = SdKind::Sample;
};

/// Up if value - base > epsilon, Down if < -epsilon, Tie otherwise.
Direction direction(double base, double value, double epsilon = 0.0);

/// Classifies one forecast. Direction is decided first; the band only
/// splits correct-direction calls into Within (|actual - forecast| <= width)
/// and Outside. `prev_forecast` is consulted only under
/// DirectionBase::PriorForecast; when absent the prior actual is used.
///
/// Returns Outcome::Tie for an excluded tie, throws TiePolicy when a tie
/// occurs under TiePolicy::Error.
Outcome classify_point(double prev_actual, double forecast, double actual,
                       const BandSpec& band, double resolved_half_width,
                       const ClassificationConfig& config = {},
                       std::optional<double> prev_forecast = std::nullopt);

/// Standard deviation of the first differences of `actual`.
double sd_of_changes(std::span<const double> actual,
                     SdKind kind = SdKind::Sample);

/// Half-width the band applies to a series: 0, x, or k * sd_of_changes.
double resolve_half_width(const BandSpec& band, std::span<const double> actual,
                          SdKind kind = SdKind::Sample);

struct Classification {
  /// One entry per classified period, in order; excluded ties are dropped.
  std::vector<Outcome> outcomes;
  /// Index into SeriesPair::forecast for each entry of `outcomes`.
  std::vector<std::size_t> point_index;
  Count excluded_ties = 0;
  double resolved_half_width = 0.0;
};

Classification classify_series(const SeriesPair& pair, const BandSpec& band,
                               const ClassificationConfig& config = {});

/// The six banded cells plus the tie tally.
struct BandCounts {
  Count uu_within = 0;
  Count up_down = 0;
  Count dd_outside = 0;
  Count down_up = 0;
  Count uu_outside = 0;
  Count dd_within = 0;

  Count total() const noexcept {
    return uu_within + up_down + dd_outside + down_up + uu_outside + dd_within;
  }

  /// a = UU within, b = UD + DD outside, c = DU + UU outside, d = DD within.
  ContingencyTable to_table() const;

  friend bool operator==(const BandCounts&, const BandCounts&) = default;
};

BandCounts count_outcomes(std::span<const Outcome> outcomes);

/// Collapses outcomes into the 2x2 table. Ties must already be removed.
ContingencyTable to_table(std::span<const Outcome> outcomes);

}  // namespace psikit
