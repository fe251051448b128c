#include "psikit/scores.hpp"

#include <cmath>

#include "psikit/error.hpp"

namespace psikit {
namespace {

double as_real(Count c) noexcept { return static_cast<double>(c); }

// (cell/n - p) / sqrt(p) with p = (row/n) * (col/n). Computing p as a
// product of proportions keeps row == n (or col == n) exact, which is what
// makes constant forecasters score exactly 0.
double standardized_cell(Count cell, Count row, Count col, double n) noexcept {
  const double p = (as_real(row) / n) * (as_real(col) / n);
  if (p == 0.0) return 0.0;
  return (as_real(cell) / n - p) / std::sqrt(p);
}

}  // namespace

double psi(const ContingencyTable& t) noexcept {
  const Marginals m = marginals(t);
  const double n = as_real(m.n);
  const double hits =
      standardized_cell(t.a(), m.forecast_up, m.observed_up, n);
  const double rejections =
      standardized_cell(t.d(), m.forecast_down, m.observed_down, n);
  const double false_alarms =
      standardized_cell(t.b(), m.forecast_up, m.observed_down, n);
  const double misses =
      standardized_cell(t.c(), m.forecast_down, m.observed_up, n);
  return ((hits + rejections) - (false_alarms + misses)) / 2.0;
}

double skill_score(double value, double perfect, double reference) {
  if (perfect == reference) {
    throw Error(ErrorCode::DegenerateBaseline,
                "perfect and reference scores coincide");
  }
  return 100.0 * (value - reference) / (perfect - reference);
}

double pss(const ContingencyTable& t) noexcept {
  const Marginals m = marginals(t);
  const double denom = as_real(m.observed_up) * as_real(m.observed_down);
  if (denom == 0.0) return 0.0;
  return (as_real(t.a()) * as_real(t.d()) - as_real(t.b()) * as_real(t.c())) /
         denom;
}

double phi(const ContingencyTable& t) noexcept {
  const Marginals m = marginals(t);
  const double denom = as_real(m.forecast_up) * as_real(m.forecast_down) *
                       as_real(m.observed_up) * as_real(m.observed_down);
  if (denom == 0.0) return 0.0;
  return (as_real(t.a()) * as_real(t.d()) - as_real(t.b()) * as_real(t.c())) /
         std::sqrt(denom);
}

double hss(const ContingencyTable& t) noexcept {
  const Marginals m = marginals(t);
  const double denom = as_real(m.observed_up) * as_real(m.forecast_down) +
                       as_real(m.forecast_up) * as_real(m.observed_down);
  if (denom == 0.0) return 0.0;
  return 2.0 *
         (as_real(t.a()) * as_real(t.d()) - as_real(t.b()) * as_real(t.c())) /
         denom;
}

double css(const ContingencyTable& t) noexcept {
  const Marginals m = marginals(t);
  const double up_row =
      m.forecast_up == 0 ? 0.0 : as_real(t.a()) / as_real(m.forecast_up);
  const double down_row =
      m.forecast_down == 0 ? 0.0 : as_real(t.c()) / as_real(m.forecast_down);
  return up_row - down_row;
}

ScoreSet score_all(const ContingencyTable& t) noexcept {
  return ScoreSet{psi(t), pss(t), phi(t), hss(t), css(t)};
}

ScoreSet skill_percents(const ScoreSet& s) {
  return ScoreSet{skill_score(s.psi), skill_score(s.pss), skill_score(s.phi),
                  skill_score(s.hss), skill_score(s.css)};
}

double mse(const SeriesPair& pair) {
  pair.validate();
  double sum = 0.0;
  for (std::size_t t = 0; t < pair.size(); ++t) {
    const double err = pair.actual[t + 1] - pair.forecast[t];
    sum += err * err;
  }
  return sum / static_cast<double>(pair.size());
}

double theil_u(const SeriesPair& pair) {
  pair.validate();
  double err_sq = 0.0;
  double actual_sq = 0.0;
  for (std::size_t t = 0; t < pair.size(); ++t) {
    const double a = pair.actual[t + 1];
    const double err = pair.forecast[t] - a;
    err_sq += err * err;
    actual_sq += a * a;
  }
  if (actual_sq == 0.0) {
    throw Error(ErrorCode::ZeroDenominator,
                "Theil U undefined: every realized value is 0");
  }
  return std::sqrt(err_sq) / std::sqrt(actual_sq);
}

double round_to(double value, int decimals) noexcept {
  const double scale = std::pow(10.0, decimals);
  const double r = std::round(value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

}  // namespace psikit
