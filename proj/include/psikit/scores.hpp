#pragma once

#include "psikit/classify.hpp"
#include "psikit/contingency.hpp"

namespace psikit {

struct ScoreSet {
  double psi = 0.0;
  double pss = 0.0;
  double phi = 0.0;
  double hss = 0.0;
  double css = 0.0;
};

/// Prediction Skill Index.
///
/// Each cell is standardized against its independence expectation
/// p = (row total / n) * (column total / n):
///
///   term(cell) = (cell / n - p) / sqrt(p)
///   psi = ((term(a) + term(d)) - (term(b) + term(c))) / 2
///
/// A cell whose expectation is zero (its row or column is empty) contributes
/// exactly 0. Under this convention constant forecasters score 0, and a
/// perfect forecast scores 1 only when Up and Down are equally frequent;
/// perfect forecasts of a rare event score less.
double psi(const ContingencyTable& t) noexcept;

/// 100 * (value - reference) / (perfect - reference).
double skill_score(double value, double perfect = 1.0, double reference = 0.0);

/// Peirce: (ad - bc) / ((a + c)(b + d)); 0 if an observed marginal is empty.
double pss(const ContingencyTable& t) noexcept;

/// Phi: (ad - bc) / sqrt((a + b)(c + d)(a + c)(b + d)); 0 if any marginal is
/// empty.
double phi(const ContingencyTable& t) noexcept;

/// Heidke: 2(ad - bc) / ((a + c)(c + d) + (a + b)(b + d)); 0 on a zero
/// denominator.
double hss(const ContingencyTable& t) noexcept;

/// Clayton: a / (a + b) - c / (c + d); an empty forecast row contributes 0.
double css(const ContingencyTable& t) noexcept;

ScoreSet score_all(const ContingencyTable& t) noexcept;

/// Skill percentages of every score against perfect = 1, reference = 0.
ScoreSet skill_percents(const ScoreSet& s);

double mse(const SeriesPair& pair);

/// Theil inequality coefficient: sqrt(sum (F - A)^2) / sqrt(sum A^2) over the
/// realized values actual[1..T]. Throws ZeroDenominator when all are 0.
double theil_u(const SeriesPair& pair);

/// Rounds half away from zero to `decimals` places.
double round_to(double value, int decimals = 3) noexcept;

}  // namespace psikit
