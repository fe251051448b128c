#include <map>
#include <tuple>

#include <fmt/format.h>
#include <json.hpp>

#include "psikit/error.hpp"
#include "psikit/io.hpp"

namespace psikit {
namespace {

using nlohmann::json;

json scores_json(const ScoreSet& s) {
  return json{{"psi", s.psi}, {"pss", s.pss}, {"phi", s.phi},
              {"hss", s.hss}, {"css", s.css}};
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string fixed3(double v) { return fmt::format("{:.3f}", round_to(v, 3)); }

std::string csv_optional(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::string render_json(const std::vector<EvaluationResult>& results) {
  json evaluations = json::array();
  for (const auto& r : results) {
    json variables = json::array();
    for (const auto& v : r.variables) {
      json counts = nullptr;
      if (v.counts) {
        const auto& c = *v.counts;
        counts = json{{"uu_within", c.uu_within},   {"up_down", c.up_down},
                      {"dd_outside", c.dd_outside}, {"down_up", c.down_up},
                      {"uu_outside", c.uu_outside}, {"dd_within", c.dd_within}};
      }
      variables.push_back(json{
          {"variable", v.variable},
          {"counts", counts},
          {"table",
           {{"a", v.table.a()}, {"b", v.table.b()}, {"c", v.table.c()},
            {"d", v.table.d()}, {"n", v.table.n()}}},
          {"scores", scores_json(v.scores)},
          {"skill_percent", scores_json(v.skill)},
          {"printed_psi", optional_json(v.printed_psi)},
          {"reproducibility", to_string(v.reproducibility)},
          {"excluded_ties", v.excluded_ties},
      });
    }
    json joint = nullptr;
    if (r.joint) {
      json weights = json::array();
      for (const auto& c : r.joint->per_component) weights.push_back(c.weight);
      joint = json{{"psi_n", r.joint->joint},
                   {"skill_percent", r.joint->joint_skill_percent},
                   {"weights", weights},
                   {"printed", optional_json(r.printed_joint)},
                   {"reproducibility", to_string(r.joint_reproducibility)}};
    }
    evaluations.push_back(json{{"organization", r.organization},
                               {"band", r.band},
                               {"source", r.source},
                               {"variables", variables},
                               {"joint", joint}});
  }
  json doc{{"schema_version", kReportSchemaVersion},
           {"evaluations", evaluations}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<EvaluationResult>& results) {
  std::string out =
      "organization,variable,band,source,uu_within,up_down,dd_outside,down_up,"
      "uu_outside,dd_within,a,b,c,d,n,psi,pss,phi,hss,css,psi_skill_pct,"
      "printed_psi,reproducibility\n";
  for (const auto& r : results) {
    for (const auto& v : r.variables) {
      std::string cells = ",,,,,";
      if (v.counts) {
        const auto& c = *v.counts;
        cells = fmt::format("{},{},{},{},{},{}", c.uu_within, c.up_down,
                            c.dd_outside, c.down_up, c.uu_outside, c.dd_within);
      }
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                         r.organization, v.variable, r.band, r.source, cells,
                         v.table.a(), v.table.b(), v.table.c(), v.table.d(),
                         v.table.n(), v.scores.psi, v.scores.pss, v.scores.phi,
                         v.scores.hss, v.scores.css, v.skill.psi,
                         csv_optional(v.printed_psi),
                         to_string(v.reproducibility));
    }
    if (r.joint) {
      out += fmt::format("{},joint,{},{},,,,,,,,,,,,{},,,,,{},{},{}\n",
                         r.organization, r.band, r.source, r.joint->joint,
                         r.joint->joint_skill_percent,
                         csv_optional(r.printed_joint),
                         to_string(r.joint_reproducibility));
    }
  }
  return out;
}

std::string render_text(const std::vector<EvaluationResult>& results) {
  std::string out;
  for (const auto& r : results) {
    if (!out.empty()) out += '\n';
    std::string title = r.organization.empty() ? std::string("(unnamed)") : r.organization;
    out += fmt::format("{}  band: {}", title, r.band);
    if (!r.source.empty()) out += fmt::format("  source: {}", r.source);
    out += '\n';
    out += fmt::format("  {:<18}{:>5}{:>5}{:>5}{:>5}{:>5}{:>9}{:>8}{:>8}{:>8}{:>8}{:>10}\n",
                       "Variable", "a", "b", "c", "d", "n", "PSI", "PSS",
                       "Phi", "HSS", "CSS", "Skill%");
    for (const auto& v : r.variables) {
      out += fmt::format(
          "  {:<18}{:>5}{:>5}{:>5}{:>5}{:>5}{:>9}{:>8}{:>8}{:>8}{:>8}{:>10}\n",
          v.variable, v.table.a(), v.table.b(), v.table.c(), v.table.d(),
          v.table.n(), fixed3(v.scores.psi), fixed3(v.scores.pss),
          fixed3(v.scores.phi), fixed3(v.scores.hss), fixed3(v.scores.css),
          fmt::format("{:.1f}", round_to(v.skill.psi, 1)));
      if (v.counts && (v.counts->dd_outside != 0 || v.counts->uu_outside != 0)) {
        const auto& c = *v.counts;
        out += fmt::format(
            "    cells: Up/Up within {}, Up/Down {}, Down/Down outside {}, "
            "Down/Up {}, Up/Up outside {}, Down/Down within {}\n",
            c.uu_within, c.up_down, c.dd_outside, c.down_up, c.uu_outside,
            c.dd_within);
      }
      if (v.excluded_ties != 0) {
        out += fmt::format("    excluded ties: {}\n", v.excluded_ties);
      }
      if (v.printed_psi && v.reproducibility == Reproducibility::ReferenceOnly) {
        out += fmt::format(
            "    reference only: printed PSI {}, recomputed {}\n",
            fixed3(*v.printed_psi), fixed3(v.scores.psi));
      }
    }
    if (r.joint) {
      out += fmt::format("  {:<43}{:>9}{:>42}\n", "Joint PSI(N)",
                         fixed3(r.joint->joint),
                         fmt::format("{:.1f}", round_to(r.joint->joint_skill_percent, 1)));
      if (r.printed_joint &&
          r.joint_reproducibility == Reproducibility::ReferenceOnly) {
        out += fmt::format(
            "    reference only: printed PSI(N) {}, recomputed {}\n",
            fixed3(*r.printed_joint), fixed3(r.joint->joint));
      }
    }
  }
  return out;
}

}  // namespace

VariableResult score_variable(std::string variable, const ContingencyTable& t) {
  const ScoreSet scores = score_all(t);
  return VariableResult{std::move(variable), std::nullopt, t, scores,
                        skill_percents(scores), std::nullopt,
                        Reproducibility::Verified, 0};
}

VariableResult score_variable(std::string variable, const BandCounts& counts) {
  auto result = score_variable(std::move(variable), counts.to_table());
  result.counts = counts;
  return result;
}

void attach_joint(EvaluationResult& result, const std::vector<double>& weights) {
  CompositeInput input;
  for (const auto& v : result.variables) {
    input.components.push_back({v.variable, v.scores.psi});
  }
  input.weights = weights;
  result.joint = psi_n(input);
  result.joint_reproducibility = Reproducibility::Verified;
  for (const auto& v : result.variables) {
    if (v.reproducibility == Reproducibility::ReferenceOnly) {
      result.joint_reproducibility = Reproducibility::ReferenceOnly;
    }
  }
}

std::vector<EvaluationResult> evaluate_fixtures(
    const std::vector<CountsFixture>& fixtures) {
  std::vector<EvaluationResult> results;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  std::vector<bool> combine;
  for (const auto& f : fixtures) {
    const auto key = std::make_tuple(f.source, f.organization, f.band);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, results.size()).first;
      EvaluationResult group;
      group.organization = f.organization;
      group.band = f.band;
      group.source = f.source;
      results.push_back(std::move(group));
      combine.push_back(true);
    }
    auto& group = results[it->second];
    auto scored = score_variable(f.variable, f.counts);
    scored.printed_psi = f.printed_psi;
    scored.reproducibility = f.reproducibility;
    group.variables.push_back(std::move(scored));
    if (f.printed_joint) group.printed_joint = f.printed_joint;
    if (!f.combine) combine[it->second] = false;
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (combine[i] && results[i].variables.size() >= 2) attach_joint(results[i]);
  }
  return results;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::Text;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorCode::Parse, fmt::format("unknown report format '{}'", text));
}

std::string emit_report(const std::vector<EvaluationResult>& results,
                        ReportFormat format) {
  if (results.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no results to report");
  }
  switch (format) {
    case ReportFormat::Text: return render_text(results);
    case ReportFormat::Csv: return render_csv(results);
    case ReportFormat::Json: return render_json(results);
  }
  return {};
}

}  // namespace psikit
