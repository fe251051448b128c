#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "psikit/scores.hpp"
#include "support/cli_runner.hpp"
#include "support/series_builder.hpp"

using namespace psikit;
using namespace psikit::testing;
using nlohmann::json;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string quoted(const std::filesystem::path& p) {
  return "\"" + p.string() + "\"";
}

}  // namespace

TEST_CASE("score --cells") {
  auto r = run_cli("score --cells 9,2,1,9");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.718"));

  r = run_cli("score --cells 1,0,0,399");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.550   1.000   1.000   1.000   1.000"));

  r = run_cli("score --cells 1,0,0,399 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  const auto& scores = doc["evaluations"][0]["variables"][0]["scores"];
  CHECK(std::abs(scores["psi"].get<double>() - 0.550) <= 0.0005);
  CHECK(scores["pss"].get<double>() == 1.0);
}

TEST_CASE("score error paths exit 2") {
  auto r = run_cli("score --cells 0,0,0,0");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "AllZero"));
  CHECK(run_cli("score --cells 1,2,3").exit_code == 2);
  CHECK(run_cli("score --cells 1,-2,3,4").exit_code == 2);
  CHECK(run_cli("score").exit_code == 2);
  const auto counts = write_file("c.csv",
      "label,band,uu_within,up_down,dd_outside,down_up,uu_outside,dd_within\n"
      "BOT:GDP growth,none,9,2,0,1,0,9\nBOT:Inf,none,9,3,0,2,0,7\n");
  CHECK(run_cli("score --cells 9,2,1,9 --counts " + quoted(counts)).exit_code == 2);
  CHECK(run_cli("score --counts /nonexistent/file.csv").exit_code == 2);
  CHECK(run_cli("score --cells 9,2,1,9 --format yaml").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("score --counts") {
  const auto counts = write_file("c2.csv",
      "label,band,uu_within,up_down,dd_outside,down_up,uu_outside,dd_within\n"
      "BOT:GDP growth,none,9,2,0,1,0,9\nBOT:Inf,none,9,3,0,2,0,7\n");
  auto r = run_cli("score --counts " + quoted(counts));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.718"));
  CHECK(contains(r.out, "0.521"));
  CHECK(contains(r.out, "0.623"));
  const auto bad = write_file("c3.csv",
      "label,band,uu_within,up_down,dd_outside,down_up,uu_outside,dd_within\n"
      "x,none,1,-1,0,0,0,0\n");
  r = run_cli("score --counts " + quoted(bad));
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "NegativeCount"));
}

TEST_CASE("classify") {
  const auto worked = write_file("worked.csv",
                                 "period,actual,forecast\n2020,0,\n2021,0.25,-0.25\n");
  auto r = run_cli("classify --series " + quoted(worked) + " --band fixed:0.5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "DownUp"));
  CHECK(contains(r.out, "a=0 b=0 c=1 d=0 n=1"));

  SUBCASE("limit equivalence") {
    std::mt19937_64 rng(4);
    const auto path = write_series("mixed.csv", series_for({5, 2, 7, 1, 4, 2}, 0.5, &rng));
    auto none = json::parse(run_cli("classify --format json --band none --series " + quoted(path)).out);
    auto huge = json::parse(run_cli("classify --format json --band fixed:1e9 --series " + quoted(path)).out);
    CHECK(none["table"] == huge["table"]);
    auto half = json::parse(run_cli("classify --format json --band fixed:0.5 --series " + quoted(path)).out);
    CHECK(half["table"]["a"] == 5);
    CHECK(half["table"]["b"] == 9);
    CHECK(half["table"]["c"] == 5);
    CHECK(half["table"]["d"] == 2);
  }
  SUBCASE("sd band half-width") {
    const auto path = write_file("zigzag.csv",
        "period,actual,forecast\n1,0,\n2,2,1\n3,0,1\n4,2,1\n");
    auto doc = json::parse(run_cli("classify --format json --band sd:1 --series " + quoted(path)).out);
    CHECK(doc["half_width"].get<double>() == doctest::Approx(std::sqrt(16.0 / 3.0)).epsilon(1e-14));
    doc = json::parse(run_cli("classify --format json --band sd:2 --sd-kind population --series " + quoted(path)).out);
    CHECK(doc["half_width"].get<double>() == doctest::Approx(2.0 * std::sqrt(32.0 / 9.0)).epsilon(1e-14));
  }
  SUBCASE("ties") {
    const auto path = write_file("tie.csv", "period,actual,forecast\n1,1,\n2,2,2\n3,2,3\n");
    r = run_cli("classify --series " + quoted(path));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "excluded ties: 1"));
    r = run_cli("classify --tie-policy error --series " + quoted(path));
    CHECK(r.exit_code == 3);
    CHECK(contains(r.err, "TiePolicyError"));
    r = run_cli("classify --tie-policy as-up --format json --series " + quoted(path));
    CHECK(json::parse(r.out)["counts"]["uu_within"] == 2);
  }
  SUBCASE("input errors") {
    const auto gap = write_file("gap.csv", "period,actual,forecast\n1,1,\n2,,2\n3,2,3\n");
    r = run_cli("classify --series " + quoted(gap));
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "AlignmentError"));
    const auto dup = write_file("dup.csv", "period,actual,forecast\n1,1,\n1,2,2\n");
    CHECK(run_cli("classify --series " + quoted(dup)).exit_code == 2);
    CHECK(run_cli("classify --band wide --series " + quoted(worked)).exit_code == 2);
    CHECK(run_cli("classify --tie-policy maybe --series " + quoted(worked)).exit_code == 2);
  }
}

TEST_CASE("evaluate") {
  const auto gdp = write_series("gdp.csv", series_for({9, 2, 0, 1, 0, 9}));
  const auto inf = write_series("inf.csv", series_for({9, 3, 0, 2, 0, 7}));
  auto r = run_cli("evaluate --organization BOT --series " + quoted(gdp) +
                   " --series " + quoted(inf));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.718"));
  CHECK(contains(r.out, "0.521"));
  CHECK(contains(r.out, "0.623"));

  SUBCASE("equal weights match the default") {
    const auto weighted = run_cli("evaluate --weights 0.5,0.5 --organization BOT --series " +
                                  quoted(gdp) + " --series " + quoted(inf));
    CHECK(weighted.out == r.out);
  }
  SUBCASE("single series joint equals its PSI") {
    const auto doc = json::parse(
        run_cli("evaluate --format json --series " + quoted(gdp)).out);
    const auto& ev = doc["evaluations"][0];
    CHECK(ev["joint"]["psi_n"].get<double>() ==
          doctest::Approx(ev["variables"][0]["scores"]["psi"].get<double>()).epsilon(1e-15));
  }
  SUBCASE("pipeline composition: classify table scored equals evaluate") {
    std::mt19937_64 rng(12);
    const auto path = write_series("pipe.csv", series_for({4, 3, 3, 2, 5, 4}, 0.5, &rng));
    const auto cls = json::parse(
        run_cli("classify --format json --band fixed:0.5 --series " + quoted(path)).out);
    const auto& t = cls["table"];
    const auto cells = fmt::format("{},{},{},{}", t["a"].get<int>(), t["b"].get<int>(),
                                   t["c"].get<int>(), t["d"].get<int>());
    const auto scored = json::parse(run_cli("score --format json --cells " + cells).out);
    const auto evaluated = json::parse(
        run_cli("evaluate --format json --band fixed:0.5 --series " + quoted(path)).out);
    CHECK(scored["evaluations"][0]["variables"][0]["scores"] ==
          evaluated["evaluations"][0]["variables"][0]["scores"]);
  }
  SUBCASE("validation") {
    CHECK(run_cli("evaluate --weights 1 --series " + quoted(gdp) + " --series " +
                  quoted(inf)).exit_code == 2);
    CHECK(run_cli("evaluate --weights 0.7,0.7 --series " + quoted(gdp) + " --series " +
                  quoted(inf)).exit_code == 2);
    CHECK(run_cli("evaluate --names a,b,c --series " + quoted(gdp)).exit_code == 2);
    CHECK(run_cli("evaluate").exit_code == 2);
  }
}

TEST_CASE("simulate") {
  const auto first = run_cli("simulate --n 400 --trials 10000 --seed 7");
  const auto second = run_cli("simulate --n 400 --trials 10000 --seed 7 --threads 3");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(std::abs(json::parse(first.out)["mean_psi"].get<double>()) < 0.02);

  const auto up = json::parse(run_cli("simulate --n 50 --trials 200 --p-up 1").out);
  CHECK(up["mean_psi"].get<double>() == 0.0);
  CHECK(up["sd_psi"].get<double>() == 0.0);

  const auto q = json::parse(run_cli("simulate --n 40 --trials 100 --quantiles 0.1,0.9").out);
  CHECK(q["quantiles"].contains("0.1"));
  CHECK(q["quantiles"].contains("0.9"));

  CHECK(run_cli("simulate --n 1").exit_code == 2);
  CHECK(run_cli("simulate --trials 0").exit_code == 2);
  CHECK(run_cli("simulate --p-up 1.5").exit_code == 2);
  CHECK(run_cli("simulate --quantiles 1.5").exit_code == 2);
}

TEST_CASE("report") {
  auto r = run_cli("report --fixtures builtin --format text");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "printed PSI 0.164, recomputed -0.332"));
  r = run_cli("report --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["evaluations"].size() == 10);
  r = run_cli("report --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("organization,variable,band", 0) == 0);
  CHECK(run_cli("report --fixtures nowhere.csv").exit_code == 2);
}

TEST_CASE("config file supplies flags") {
  const auto cfg = write_file("run.ini", "[score]\ncells=\"1,0,0,399\"\nformat=\"json\"\n");
  const auto r = run_cli("--config " + quoted(cfg) + " score");
  REQUIRE(r.exit_code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["evaluations"][0]["variables"][0]["table"]["d"] == 399);
}
