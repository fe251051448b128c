// psikit: directional forecast skill from the command line.
//
//   psikit score    --cells 9,2,1,9 | --counts counts.csv
//   psikit classify --series gdp.csv --band fixed:0.5
//   psikit evaluate --series gdp.csv --series inf.csv --band sd:1
//   psikit simulate --n 400 --trials 10000 --seed 7
//   psikit report   --fixtures builtin --format text
//
// Exit status: 0 success, 2 input or validation error, 3 tie policy error.

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "psikit/benchmarks.hpp"
#include "psikit/classify.hpp"
#include "psikit/error.hpp"
#include "psikit/io.hpp"
#include "psikit/scores.hpp"

namespace {

using namespace psikit;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitPolicy = 3;

struct ClassifyFlags {
  std::string band = "none";
  std::string tie_policy = "exclude";
  std::string base = "prior-actual";
  std::string sd_kind = "sample";
  double tie_epsilon = 0.0;
};

void add_classify_flags(CLI::App* cmd, ClassifyFlags& flags) {
  cmd->add_option("--band", flags.band, "none | fixed:<x> | sd:<k>")
      ->capture_default_str();
  cmd->add_option("--tie-policy", flags.tie_policy, "How zero changes are handled")
      ->check(CLI::IsMember({"exclude", "as-up", "as-down", "error"}))
      ->capture_default_str();
  cmd->add_option("--base", flags.base, "Anchor for the forecast direction")
      ->check(CLI::IsMember({"prior-actual", "prior-forecast"}))
      ->capture_default_str();
  cmd->add_option("--sd-kind", flags.sd_kind, "Divisor for sd:<k> bands")
      ->check(CLI::IsMember({"sample", "population"}))
      ->capture_default_str();
  cmd->add_option("--tie-epsilon", flags.tie_epsilon,
                  "Changes within +/- epsilon count as ties")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

ClassificationConfig to_config(const ClassifyFlags& flags) {
  ClassificationConfig config;
  config.tie_epsilon = flags.tie_epsilon;
  if (flags.tie_policy == "as-up") config.tie_policy = TiePolicy::AsUp;
  if (flags.tie_policy == "as-down") config.tie_policy = TiePolicy::AsDown;
  if (flags.tie_policy == "error") config.tie_policy = TiePolicy::Error;
  if (flags.base == "prior-forecast") {
    config.direction_base = DirectionBase::PriorForecast;
  }
  if (flags.sd_kind == "population") config.sd_kind = SdKind::Population;
  return config;
}

ContingencyTable parse_cells(const std::string& text) {
  std::vector<Count> cells;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string_view field(text.data() + start, comma - start);
    if (!field.empty() && field.front() == '-') {
      throw Error(ErrorCode::NegativeCount,
                  fmt::format("negative cell count '{}'", field));
    }
    Count v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorCode::Parse, fmt::format("bad cell count '{}'", field));
    }
    cells.push_back(v);
    start = comma + 1;
  }
  if (cells.size() != 4) {
    throw Error(ErrorCode::Parse, "--cells expects four counts a,b,c,d");
  }
  return ContingencyTable::from_counts(cells[0], cells[1], cells[2], cells[3]);
}

int run_score(const std::string& counts_path, const std::string& cells,
              const std::string& format) {
  std::vector<EvaluationResult> results;
  if (!cells.empty()) {
    EvaluationResult r;
    r.band = "none";
    r.variables.push_back(score_variable("table", parse_cells(cells)));
    results.push_back(std::move(r));
  } else {
    results = evaluate_fixtures(load_counts_file(counts_path));
  }
  std::cout << emit_report(results, parse_report_format(format));
  return 0;
}

int run_classify(const std::string& path, const ClassifyFlags& flags,
                 const std::string& format) {
  const LoadedSeries loaded = load_series_file(path);
  const BandSpec band = parse_band(flags.band);
  const Classification result = classify_series(loaded.pair, band, to_config(flags));
  const BandCounts counts = count_outcomes(result.outcomes);
  const auto& pair = loaded.pair;

  if (format == "json") {
    json points = json::array();
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
      const std::size_t t = result.point_index[i];
      points.push_back(json{{"period", pair.periods[t + 1]},
                            {"base", pair.actual[t]},
                            {"forecast", pair.forecast[t]},
                            {"actual", pair.actual[t + 1]},
                            {"outcome", to_string(result.outcomes[i])}});
    }
    json doc{{"schema_version", kReportSchemaVersion},
             {"series", loaded.variable},
             {"band", format_band(band)},
             {"half_width", result.resolved_half_width},
             {"points", points},
             {"counts",
              {{"uu_within", counts.uu_within},   {"up_down", counts.up_down},
               {"dd_outside", counts.dd_outside}, {"down_up", counts.down_up},
               {"uu_outside", counts.uu_outside}, {"dd_within", counts.dd_within}}},
             {"excluded_ties", result.excluded_ties},
             {"dropped_trailing", loaded.dropped_trailing}};
    if (!result.outcomes.empty()) {
      const auto table = counts.to_table();
      doc["table"] = json{{"a", table.a()}, {"b", table.b()}, {"c", table.c()},
                          {"d", table.d()}, {"n", table.n()}};
    } else {
      doc["table"] = nullptr;
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  if (format != "text") {
    throw Error(ErrorCode::Parse, fmt::format("unknown format '{}'", format));
  }

  std::cout << fmt::format("series: {}  band: {}  half-width: {:.3f}\n",
                           loaded.variable, format_band(band),
                           result.resolved_half_width);
  std::cout << fmt::format("{:<12}{:>10}{:>10}{:>10}  {}\n", "period", "base",
                           "forecast", "actual", "outcome");
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    const std::size_t t = result.point_index[i];
    std::cout << fmt::format("{:<12}{:>10.3f}{:>10.3f}{:>10.3f}  {}\n",
                             pair.periods[t + 1], pair.actual[t], pair.forecast[t],
                             pair.actual[t + 1], to_string(result.outcomes[i]));
  }
  std::cout << fmt::format(
      "cells: Up/Up within {}, Up/Down {}, Down/Down outside {}, Down/Up {}, "
      "Up/Up outside {}, Down/Down within {}\n",
      counts.uu_within, counts.up_down, counts.dd_outside, counts.down_up,
      counts.uu_outside, counts.dd_within);
  const auto table = to_table(result.outcomes);
  std::cout << fmt::format("table: a={} b={} c={} d={} n={}\n", table.a(),
                           table.b(), table.c(), table.d(), table.n());
  std::cout << fmt::format("excluded ties: {}  dropped trailing rows: {}\n",
                           result.excluded_ties, loaded.dropped_trailing);
  return 0;
}

int run_evaluate(const std::vector<std::string>& paths,
                 const std::vector<std::string>& names,
                 const std::string& organization, const ClassifyFlags& flags,
                 const std::vector<double>& weights, const std::string& format) {
  if (!names.empty() && names.size() != paths.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} names given for {} series", names.size(),
                            paths.size()));
  }
  if (!weights.empty() && weights.size() != paths.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} weights given for {} series", weights.size(),
                            paths.size()));
  }
  const BandSpec band = parse_band(flags.band);
  const auto config = to_config(flags);

  EvaluationResult result;
  result.organization = organization;
  result.band = format_band(band);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const LoadedSeries loaded = load_series_file(paths[i]);
    const Classification c = classify_series(loaded.pair, band, config);
    auto scored = score_variable(names.empty() ? loaded.variable : names[i],
                                 count_outcomes(c.outcomes));
    scored.excluded_ties = c.excluded_ties;
    result.variables.push_back(std::move(scored));
  }
  attach_joint(result, weights);
  std::cout << emit_report({result}, parse_report_format(format));
  return 0;
}

int run_simulate(const NullDistributionOptions& opts) {
  const auto summary = null_distribution(opts);
  json quantiles = json::object();
  for (const auto& [q, v] : summary.quantiles) {
    quantiles[fmt::format("{}", q)] = v;
  }
  json doc{{"schema_version", kReportSchemaVersion},
           {"n", opts.n},
           {"p_up_observed", opts.p_up_observed},
           {"p_up_forecast", opts.p_up_forecast},
           {"seed", opts.seed},
           {"trials", summary.trials},
           {"mean_psi", summary.mean_psi},
           {"sd_psi", summary.sd_psi},
           {"quantiles", quantiles}};
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int run_report(const std::string& fixtures, const std::string& format) {
  const auto loaded =
      fixtures == "builtin" ? builtin_fixtures() : load_counts_file(fixtures);
  std::cout << emit_report(evaluate_fixtures(loaded), parse_report_format(format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional forecast skill: PSI, comparison scores and joint PSI(N)"};
  app.set_config("--config", "", "Read flags from a TOML/INI file");
  app.require_subcommand(1);

  std::string format = "text";

  auto* score = app.add_subcommand("score", "Score a 2x2 table or a counts file");
  std::string counts_path;
  std::string cells;
  auto* counts_opt = score->add_option("--counts", counts_path, "Counts CSV")
                         ->check(CLI::ExistingFile);
  auto* cells_opt =
      score->add_option("--cells", cells, "Cells a,b,c,d of a single table");
  counts_opt->excludes(cells_opt);
  score->add_option("--format", format, "text | csv | json")->capture_default_str();

  auto* classify =
      app.add_subcommand("classify", "Classify one series into outcome categories");
  std::string series_path;
  ClassifyFlags classify_flags;
  classify->add_option("--series", series_path, "Series CSV")
      ->required()
      ->check(CLI::ExistingFile);
  add_classify_flags(classify, classify_flags);
  classify->add_option("--format", format, "text | json")->capture_default_str();

  auto* evaluate = app.add_subcommand(
      "evaluate", "Score one or more series and their joint PSI(N)");
  std::vector<std::string> series_paths;
  std::vector<std::string> names;
  std::vector<double> weights;
  std::string organization;
  ClassifyFlags evaluate_flags;
  evaluate->add_option("--series", series_paths, "Series CSV, one per variable")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--names", names, "Variable names (default: file stems)")
      ->delimiter(',');
  evaluate->add_option("--organization", organization, "Forecaster name");
  evaluate->add_option("--weights", weights, "Composite weights w1,w2,...")
      ->delimiter(',');
  add_classify_flags(evaluate, evaluate_flags);
  evaluate->add_option("--format", format, "text | csv | json")->capture_default_str();

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo PSI distribution of random forecasts (JSON)");
  NullDistributionOptions sim;
  simulate->add_option("--n", sim.n, "Observations per trial")->capture_default_str();
  simulate->add_option("--trials", sim.trials, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--p-up", sim.p_up_forecast, "P(forecast Up)")
      ->capture_default_str();
  simulate->add_option("--p-up-observed", sim.p_up_observed, "P(observed Up)")
      ->capture_default_str();
  simulate->add_option("--quantiles", sim.quantiles, "Quantile levels in (0,1)")
      ->delimiter(',');
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");

  auto* report = app.add_subcommand("report", "Render fixture tables");
  std::string fixtures = "builtin";
  report->add_option("--fixtures", fixtures, "'builtin' or a counts CSV")
      ->capture_default_str();
  report->add_option("--format", format, "text | csv | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*score) {
      if (counts_path.empty() && cells.empty()) {
        std::cerr << "error: score needs --counts or --cells\n";
        return kExitInput;
      }
      return run_score(counts_path, cells, format);
    }
    if (*classify) return run_classify(series_path, classify_flags, format);
    if (*evaluate) {
      return run_evaluate(series_paths, names, organization, evaluate_flags,
                          weights, format);
    }
    if (*simulate) return run_simulate(sim);
    if (*report) return run_report(fixtures, format);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::TiePolicy ? kExitPolicy : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
