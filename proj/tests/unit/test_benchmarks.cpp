#include <doctest.h>

#include <cmath>
#include <random>

#include "psikit/benchmarks.hpp"
#include "psikit/error.hpp"
#include "psikit/scores.hpp"

using namespace psikit;

namespace {

std::vector<Direction> random_directions(std::mt19937_64& rng, std::size_t n) {
  std::vector<Direction> out(n);
  for (auto& d : out) d = (rng() & 1) ? Direction::Up : Direction::Down;
  return out;
}

}  // namespace

TEST_CASE("constant reference forecasters") {
  std::mt19937_64 rng(3);
  const auto observed = random_directions(rng, 10);
  CHECK(generate_directions(AlwaysUp{}, observed) ==
        std::vector<Direction>(10, Direction::Up));
  CHECK(generate_directions(AlwaysDown{}, observed) ==
        std::vector<Direction>(10, Direction::Down));
  CHECK(generate_directions(RandomForecaster{1.0, 42}, observed) ==
        generate_directions(AlwaysUp{}, observed));
  CHECK(generate_directions(RandomForecaster{0.0, 42}, observed) ==
        generate_directions(AlwaysDown{}, observed));
}

TEST_CASE("persistence repeats the previous observed direction") {
  const std::vector<Direction> observed{Direction::Up, Direction::Up,
                                        Direction::Down, Direction::Down};
  CHECK(generate_directions(NoChange{}, observed) ==
        std::vector<Direction>{Direction::Up, Direction::Up, Direction::Up,
                               Direction::Down});
  CHECK(generate_directions(NoChange{FirstStep::Exclude}, observed) ==
        std::vector<Direction>{Direction::Up, Direction::Up, Direction::Down});
}

TEST_CASE("random forecaster is seeded") {
  std::mt19937_64 rng(8);
  const auto observed = random_directions(rng, 200);
  const auto first = generate_directions(RandomForecaster{0.3, 9}, observed);
  CHECK(first == generate_directions(RandomForecaster{0.3, 9}, observed));
  CHECK(first != generate_directions(RandomForecaster{0.3, 10}, observed));
  CHECK_THROWS_AS(generate_directions(RandomForecaster{1.5, 0}, observed), Error);
}

TEST_CASE("constant forecasts tabulate to PSI exactly zero") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto observed = random_directions(rng, 1 + rng() % 50);
    CHECK(psi(tabulate(generate_directions(AlwaysUp{}, observed), observed)) == 0.0);
    CHECK(psi(tabulate(generate_directions(AlwaysDown{}, observed), observed)) ==
          0.0);
  }
}

TEST_CASE("value-level no-change forecast") {
  const std::vector<double> actual{1.0, 2.5, 2.0, 4.0};
  CHECK(no_change_forecast(actual) == std::vector<double>{1.0, 2.5, 2.0});
  CHECK_THROWS_AS(no_change_forecast(std::vector<double>{1.0}), Error);
}

TEST_CASE("tabulate") {
  using D = Direction;
  const std::vector<D> f{D::Up, D::Up, D::Down, D::Down, D::Up};
  const std::vector<D> o{D::Up, D::Down, D::Up, D::Down, D::Up};
  CHECK(tabulate(f, o) == ContingencyTable::from_counts(2, 1, 1, 1));
  CHECK_THROWS_AS(tabulate(std::vector<D>{D::Up}, o), Error);
}

TEST_CASE("quantile interpolates order statistics") {
  const std::vector<double> sorted{1, 2, 3, 4, 5};
  CHECK(quantile(sorted, 0.5) == 3.0);
  CHECK(quantile(sorted, 0.25) == 2.0);
  CHECK(quantile(sorted, 0.1) == doctest::Approx(1.4));
  CHECK_THROWS_AS(quantile(sorted, 1.0), Error);
}

TEST_CASE("null distribution") {
  NullDistributionOptions opts;
  opts.n = 400;
  opts.trials = 2000;
  opts.seed = 7;

  SUBCASE("centered on zero") {
    const auto s = null_distribution(opts);
    CHECK(std::abs(s.mean_psi) < 0.02);
    CHECK(s.sd_psi > 0.0);
    CHECK(s.quantiles.at(0.025) < s.quantiles.at(0.5));
    CHECK(s.quantiles.at(0.5) < s.quantiles.at(0.975));
  }
  SUBCASE("identical for any thread count") {
    opts.threads = 1;
    const auto one = null_distribution(opts);
    opts.threads = 5;
    const auto five = null_distribution(opts);
    CHECK(one.mean_psi == five.mean_psi);
    CHECK(one.sd_psi == five.sd_psi);
    CHECK(one.quantiles == five.quantiles);
  }
  SUBCASE("single trial passes through") {
    opts.trials = 1;
    opts.p_up_forecast = 1.0;
    opts.p_up_observed = 1.0;
    const auto s = null_distribution(opts);
    CHECK(s.mean_psi == psi(ContingencyTable::from_counts(400, 0, 0, 0)));
    CHECK(s.sd_psi == 0.0);
  }
  SUBCASE("always-up forecasts give zero in every trial") {
    opts.p_up_forecast = 1.0;
    opts.trials = 300;
    const auto s = null_distribution(opts);
    CHECK(s.mean_psi == 0.0);
    CHECK(s.sd_psi == 0.0);
  }
  SUBCASE("parameter validation") {
    opts.n = 1;
    CHECK_THROWS_AS(null_distribution(opts), Error);
    opts.n = 10;
    opts.trials = 0;
    CHECK_THROWS_AS(null_distribution(opts), Error);
    opts.trials = 10;
    opts.quantiles = {0.0};
    CHECK_THROWS_AS(null_distribution(opts), Error);
  }
}
