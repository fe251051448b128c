#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psikit/classify.hpp"
#include "psikit/composite.hpp"
#include "psikit/contingency.hpp"
#include "psikit/scores.hpp"

namespace psikit {

// ---------------------------------------------------------------------------
// Series input
// ---------------------------------------------------------------------------

/// A `period,actual,forecast` CSV after alignment.
///
/// The row holding the first forecast must be preceded by a row with an
/// actual value (the base period). Earlier actual-only rows are history and
/// are dropped. Trailing rows that cannot be paired (forecast without a
/// realized actual, or an actual with no forecast) are dropped and counted.
/// A missing value anywhere in between is an AlignmentError.
struct LoadedSeries {
  std::string variable;
  std::string organization;
  SeriesPair pair;
  Count dropped_leading = 0;
  Count dropped_trailing = 0;
};

LoadedSeries load_series(std::istream& in);
LoadedSeries load_series_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Cell-count fixtures
// ---------------------------------------------------------------------------

enum class Reproducibility { Verified, ReferenceOnly };

std::string_view to_string(Reproducibility r) noexcept;

struct CountsFixture {
  /// Free text; `ORG:variable` labels are split into organization and
  /// variable when loaded from CSV.
  std::string label;
  std::string organization;
  std::string variable;
  std::string band = "none";
  std::string source;
  BandCounts counts;
  std::optional<double> printed_psi;
  std::optional<double> printed_joint;
  Reproducibility reproducibility = Reproducibility::Verified;
  /// Whether rows sharing (source, organization, band) form a joint index.
  bool combine = true;
};

inline constexpr std::string_view kCountsHeader =
    "label,band,uu_within,up_down,dd_outside,down_up,uu_outside,dd_within";

/// Reads the cell-count CSV. Plain 2x2 tables put zeros in the two outside
/// columns.
std::vector<CountsFixture> load_counts(std::istream& in);
std::vector<CountsFixture> load_counts_file(const std::filesystem::path& path);

/// Writes fixtures in the `load_counts` schema (LF line endings).
void write_counts(std::ostream& out, const std::vector<CountsFixture>& fixtures);

/// The published rare/random-event tables and the three Thai forecaster
/// evaluations (no band, +/-1 SD band, +/-0.5% band), with their printed
/// scores attached.
std::vector<CountsFixture> builtin_fixtures();

/// Reference statistics quoted alongside the fixtures: standard deviations
/// of year-on-year changes in actual Thai GDP growth and inflation,
/// 2001-2021 (percent). The underlying series are not shipped.
struct ReferenceBandWidths {
  double gdp_growth_change_sd = 4.537;
  double inflation_change_sd = 2.215;
};

// ---------------------------------------------------------------------------
// Evaluation results and rendering
// ---------------------------------------------------------------------------

struct VariableResult {
  std::string variable;
  std::optional<BandCounts> counts;
  ContingencyTable table;
  ScoreSet scores;
  ScoreSet skill;
  std::optional<double> printed_psi;
  Reproducibility reproducibility = Reproducibility::Verified;
  Count excluded_ties = 0;
};

VariableResult score_variable(std::string variable, const ContingencyTable& t);
VariableResult score_variable(std::string variable, const BandCounts& counts);

struct EvaluationResult {
  std::string organization;
  std::string band;
  std::string source;
  std::vector<VariableResult> variables;
  std::optional<CompositeResult> joint;
  std::optional<double> printed_joint;
  Reproducibility joint_reproducibility = Reproducibility::Verified;
};

/// Attaches the joint index over `result.variables` (needs >= 1 variable).
void attach_joint(EvaluationResult& result, const std::vector<double>& weights = {});

/// Scores every fixture and groups rows sharing (source, organization, band)
/// in order of first appearance; groups of two or more combinable rows get
/// a joint index.
std::vector<EvaluationResult> evaluate_fixtures(
    const std::vector<CountsFixture>& fixtures);

enum class ReportFormat { Text, Csv, Json };

ReportFormat parse_report_format(std::string_view text);

inline constexpr int kReportSchemaVersion = 1;

/// Renders results. Text uses 3-decimal rounding; CSV and JSON carry full
/// precision. Throws InvalidArgument on an empty result list.
std::string emit_report(const std::vector<EvaluationResult>& results,
                        ReportFormat format);

}  // namespace psikit
