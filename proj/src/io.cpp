#include "psikit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "psikit/error.hpp"

namespace psikit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Yields non-blank lines with any CR and UTF-8 BOM stripped.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trim(line).empty()) return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, fmt::format("line {}: {}", line, msg));
}

std::optional<double> parse_optional_real(std::string_view field,
                                          std::size_t line) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    parse_error(line, fmt::format("'{}' is not a finite number", field));
  }
  return v;
}

Count parse_count(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '-') {
    throw Error(ErrorCode::NegativeCount,
                fmt::format("line {}: negative count '{}'", line, field));
  }
  Count v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    parse_error(line, fmt::format("'{}' is not a non-negative integer", field));
  }
  return v;
}

void expect_header(LineReader& reader, std::string_view expected) {
  std::string line;
  if (!reader.next(line)) parse_error(1, "empty input, expected a header row");
  auto fields = split_fields(line);
  auto want = split_fields(expected);
  if (fields != want) {
    parse_error(reader.number(),
                fmt::format("header must be '{}', got '{}'", expected, line));
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Parse,
                fmt::format("cannot open '{}'", path.string()));
  }
  return in;
}

struct SeriesRow {
  std::string period;
  std::optional<double> actual;
  std::optional<double> forecast;
  std::size_t line = 0;
};

}  // namespace

std::string_view to_string(Reproducibility r) noexcept {
  return r == Reproducibility::Verified ? "verified" : "reference_only";
}

LoadedSeries load_series(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, "period,actual,forecast");

  std::vector<SeriesRow> rows;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      parse_error(reader.number(),
                  fmt::format("expected 3 fields, got {}", fields.size()));
    }
    if (fields[0].empty()) parse_error(reader.number(), "missing period label");
    SeriesRow row{std::string(fields[0]),
                  parse_optional_real(fields[1], reader.number()),
                  parse_optional_real(fields[2], reader.number()),
                  reader.number()};
    if (!row.actual && !row.forecast) {
      parse_error(reader.number(), "row has neither actual nor forecast");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_error(reader.number(), "no data rows");

  std::stable_sort(rows.begin(), rows.end(), [](const auto& l, const auto& r) {
    return period_less(l.period, r.period);
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!period_less(rows[i - 1].period, rows[i].period)) {
      parse_error(rows[i].line,
                  fmt::format("duplicate period '{}'", rows[i].period));
    }
  }

  const auto first_forecast = std::find_if(
      rows.begin(), rows.end(), [](const auto& r) { return r.forecast.has_value(); });
  if (first_forecast == rows.end()) {
    throw Error(ErrorCode::Alignment, "series has no forecast values");
  }
  if (first_forecast == rows.begin() || !std::prev(first_forecast)->actual) {
    throw Error(ErrorCode::Alignment,
                fmt::format("forecast for '{}' has no preceding actual value",
                            first_forecast->period));
  }
  const auto base = static_cast<std::size_t>(
      std::distance(rows.begin(), first_forecast) - 1);

  // Last row that pairs a forecast with its realization.
  std::size_t last = rows.size() - 1;
  while (last > base && !(rows[last].actual && rows[last].forecast)) --last;
  if (last == base) {
    throw Error(ErrorCode::Alignment,
                "no forecast is paired with a realized actual value");
  }

  LoadedSeries out;
  out.dropped_leading = base;
  out.dropped_trailing = rows.size() - 1 - last;
  auto& pair = out.pair;
  pair.periods.push_back(rows[base].period);
  pair.actual.push_back(*rows[base].actual);
  for (std::size_t i = base + 1; i <= last; ++i) {
    const auto& row = rows[i];
    if (!row.actual || !row.forecast) {
      throw Error(ErrorCode::Alignment,
                  fmt::format("line {}: period '{}' is missing its {} value",
                              row.line, row.period,
                              row.actual ? "forecast" : "actual"));
    }
    pair.periods.push_back(row.period);
    pair.actual.push_back(*row.actual);
    pair.forecast.push_back(*row.forecast);
  }
  pair.validate();
  return out;
}

LoadedSeries load_series_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  auto loaded = load_series(in);
  loaded.variable = path.stem().string();
  return loaded;
}

std::vector<CountsFixture> load_counts(std::istream& in) {
  LineReader reader(in);
  expect_header(reader, kCountsHeader);

  std::vector<CountsFixture> fixtures;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != 8) {
      parse_error(reader.number(),
                  fmt::format("expected 8 fields, got {}", fields.size()));
    }
    CountsFixture f;
    f.label = std::string(fields[0]);
    if (f.label.empty()) parse_error(reader.number(), "missing label");
    if (auto colon = f.label.find(':'); colon != std::string::npos) {
      f.organization = f.label.substr(0, colon);
      f.variable = f.label.substr(colon + 1);
    } else {
      f.variable = f.label;
    }
    f.band = std::string(fields[1]);
    try {
      parse_band(f.band);
    } catch (const Error& e) {
      parse_error(reader.number(), e.what());
    }
    const std::size_t n = reader.number();
    f.counts = BandCounts{parse_count(fields[2], n), parse_count(fields[3], n),
                          parse_count(fields[4], n), parse_count(fields[5], n),
                          parse_count(fields[6], n), parse_count(fields[7], n)};
    if (f.counts.total() == 0) {
      throw Error(ErrorCode::AllZero,
                  fmt::format("line {}: '{}' has no observations", n, f.label));
    }
    fixtures.push_back(std::move(f));
  }
  return fixtures;
}

std::vector<CountsFixture> load_counts_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_counts(in);
}

void write_counts(std::ostream& out, const std::vector<CountsFixture>& fixtures) {
  out << kCountsHeader << '\n';
  for (const auto& f : fixtures) {
    const auto& c = f.counts;
    out << fmt::format("{},{},{},{},{},{},{},{}\n", f.label, f.band, c.uu_within,
                       c.up_down, c.dd_outside, c.down_up, c.uu_outside,
                       c.dd_within);
  }
}

std::vector<CountsFixture> builtin_fixtures() {
  struct Row {
    const char* source;
    const char* org;
    const char* variable;
    const char* band;
    BandCounts counts;
    double printed_psi;
    std::optional<double> printed_joint;
    Reproducibility repro;
    bool combine;
  };
  constexpr auto V = Reproducibility::Verified;
  constexpr auto R = Reproducibility::ReferenceOnly;
  // Cell order: uu_within, up_down, dd_outside, down_up, uu_outside, dd_within.
  const Row rows[] = {
      {"rare-vs-random", "", "Rare or extreme", "none", {1, 0, 0, 0, 0, 399}, 0.550, {}, V, false},
      {"rare-vs-random", "", "Random", "none", {193, 0, 0, 0, 0, 207}, 1.000, {}, V, false},

      {"thai-no-band", "BOT", "GDP growth", "none", {9, 2, 0, 1, 0, 9}, 0.718, 0.623, V, true},
      {"thai-no-band", "BOT", "Inf", "none", {9, 3, 0, 2, 0, 7}, 0.521, 0.623, V, true},
      {"thai-no-band", "FPO", "GDP growth", "none", {8, 4, 0, 1, 0, 6}, 0.501, 0.529, V, true},
      {"thai-no-band", "FPO", "Inf", "none", {10, 3, 0, 1, 0, 5}, 0.555, 0.529, V, true},
      {"thai-no-band", "NESDC", "GDP growth", "none", {8, 4, 0, 2, 0, 7}, 0.439, 0.387, V, true},
      {"thai-no-band", "NESDC", "Inf", "none", {9, 5, 0, 2, 0, 5}, 0.332, 0.387, V, true},

      {"thai-sd-band", "BOT", "GDP growth", "sd:1", {9, 2, 0, 1, 0, 9}, 0.718, 0.623, V, true},
      {"thai-sd-band", "BOT", "Inf", "sd:1", {9, 3, 0, 2, 0, 7}, 0.521, 0.623, V, true},
      {"thai-sd-band", "FPO", "GDP growth", "sd:1", {8, 4, 0, 1, 0, 6}, 0.501, 0.529, V, true},
      {"thai-sd-band", "FPO", "Inf", "sd:1", {10, 3, 0, 1, 0, 5}, 0.555, 0.529, V, true},
      {"thai-sd-band", "NESDC", "GDP growth", "sd:1", {8, 4, 0, 2, 0, 7}, 0.439, 0.341, V, true},
      {"thai-sd-band", "NESDC", "Inf", "sd:1", {8, 5, 1, 2, 1, 4}, 0.236, 0.341, R, true},

      {"thai-half-pct-band", "BOT", "GDP growth", "fixed:0.5", {5, 2, 7, 1, 4, 2}, 0.164, 0.168, R, true},
      {"thai-half-pct-band", "BOT", "Inf", "fixed:0.5", {4, 3, 3, 2, 5, 4}, 0.171, 0.168, R, true},
      {"thai-half-pct-band", "FPO", "GDP growth", "fixed:0.5", {4, 4, 5, 1, 4, 1}, 0.007, 0.173, R, true},
      {"thai-half-pct-band", "FPO", "Inf", "fixed:0.5", {7, 3, 2, 1, 3, 3}, 0.318, 0.173, R, true},
      {"thai-half-pct-band", "NESDC", "GDP growth", "fixed:0.5", {4, 4, 5, 2, 4, 2}, 0.004, -0.025, R, true},
      {"thai-half-pct-band", "NESDC", "Inf", "fixed:0.5", {6, 5, 4, 2, 3, 1}, -0.055, -0.025, R, true},
  };

  std::vector<CountsFixture> out;
  for (const auto& r : rows) {
    CountsFixture f;
    f.organization = r.org;
    f.variable = r.variable;
    f.label = f.organization.empty() ? f.variable
                                     : f.organization + ":" + f.variable;
    f.band = r.band;
    f.source = r.source;
    f.counts = r.counts;
    f.printed_psi = r.printed_psi;
    f.printed_joint = r.printed_joint;
    f.reproducibility = r.repro;
    f.combine = r.combine;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace psikit
