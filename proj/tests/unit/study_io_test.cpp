#include "crpssa/study_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "crpssa/error.hpp"

namespace crpssa {
namespace {

namespace fs = std::filesystem;

const char* kMinimal = R"({
  "study_id": "m",
  "quantile_levels": [0.05, 0.5, 0.95],
  "variables": [
    {"variable_id": "v", "realization": 3,
     "assessments": [{"expert_id": "e", "values": [1, 2, 4]}]}
  ]
})";

LoadedStudy from_json(const std::string& text) {
  std::istringstream in(text);
  return load_study_json(in);
}

LoadedStudy from_csv(const std::string& text) {
  std::istringstream in(text);
  return load_study_csv(in);
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

fs::path fixture(const char* name) { return fs::path(CRPSSA_FIXTURE_DIR) / "toy_study" / name; }

TEST(LoadJson, Minimal) {
  const LoadedStudy s = from_json(kMinimal);
  EXPECT_EQ(s.study.study_id, "m");
  ASSERT_EQ(s.study.variables.size(), 1u);
  EXPECT_EQ(s.study.variables[0].assessments.at("e").values(), (std::vector<double>{1, 2, 4}));
  EXPECT_TRUE(s.diagnostics.dropped_experts.empty());
}

TEST(LoadJson, IncompleteExpertDropped) {
  const LoadedStudy s = from_json(R"({
    "study_id": "d", "quantile_levels": [0.5],
    "variables": [
      {"variable_id": "a", "realization": 1,
       "assessments": [{"expert_id": "x", "values": [1]}, {"expert_id": "y", "values": [2]}]},
      {"variable_id": "b", "realization": 1,
       "assessments": [{"expert_id": "x", "values": [1]}]}
    ]})");
  ASSERT_EQ(s.diagnostics.dropped_experts.size(), 1u);
  EXPECT_EQ(s.diagnostics.dropped_experts[0].expert_id, "y");
  EXPECT_EQ(s.diagnostics.dropped_experts[0].reason, "incomplete");
  EXPECT_EQ(s.study.expert_ids(), std::vector<std::string>{"x"});
}

TEST(LoadJson, SchemaErrorsCarryFieldPath) {
  std::string j = kMinimal;
  const std::string bad_values = std::string(kMinimal).replace(j.find("[1, 2, 4]"), 9, "[2, 2, 3]");
  const std::string msg = error_of([&] { from_json(bad_values); });
  EXPECT_NE(msg.find("non-increasing quantile values"), std::string::npos) << msg;
  EXPECT_NE(msg.find("variables[0].assessments[0].values"), std::string::npos) << msg;

  const std::string missing = std::string(kMinimal).replace(j.find("\"realization\": 3,"), 17, "");
  EXPECT_NE(error_of([&] { from_json(missing); }).find("missing field 'realization'"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_json("{not json"); }).find("malformed JSON"), std::string::npos);
  const std::string count = std::string(kMinimal).replace(j.find("[1, 2, 4]"), 9, "[1, 2]");
  EXPECT_NE(error_of([&] { from_json(count); }).find("expected 3 quantile values"),
            std::string::npos);
}

TEST(LoadJson, DuplicatesRejected) {
  const std::string dup_var = R"({"study_id": "d", "quantile_levels": [0.5], "variables": [
      {"variable_id": "a", "realization": 1, "assessments": [{"expert_id": "x", "values": [1]}]},
      {"variable_id": "a", "realization": 1, "assessments": [{"expert_id": "x", "values": [1]}]}]})";
  EXPECT_NE(error_of([&] { from_json(dup_var); }).find("duplicate variable id"), std::string::npos);
  const std::string dup_exp = R"({"study_id": "d", "quantile_levels": [0.5], "variables": [
      {"variable_id": "a", "realization": 1, "assessments": [
        {"expert_id": "x", "values": [1]}, {"expert_id": "x", "values": [2]}]}]})";
  EXPECT_NE(error_of([&] { from_json(dup_exp); }).find("duplicate expert id"), std::string::npos);
}

TEST(LoadJson, ConfigOverridesAndBackground) {
  const LoadedStudy s = from_json(R"({"study_id": "c", "quantile_levels": [0.5],
      "config": {"overshoot": 0.2, "convention": "two-sided", "range_includes_realization": false},
      "variables": [{"variable_id": "a", "realization": 1,
                     "assessments": [{"expert_id": "x", "values": [1]}]}]})");
  EXPECT_EQ(s.study.config.overshoot, 0.2);
  EXPECT_EQ(s.study.config.convention, SaConvention::two_sided);
  EXPECT_EQ(s.study.config.range_includes_realization, false);
  const std::string lu = R"({"study_id": "c", "quantile_levels": [0.5], "background": "log_uniform",
      "variables": [{"variable_id": "a", "realization": 1,
                     "assessments": [{"expert_id": "x", "values": [1]}]}]})";
  EXPECT_NE(error_of([&] { from_json(lu); }).find("log-uniform"), std::string::npos);
}

TEST(LoadJson, NearZeroRealizationWarns) {
  std::string j = kMinimal;
  j.replace(j.find("\"realization\": 3"), 16, "\"realization\": 0");
  j.replace(j.find("[1, 2, 4]"), 9, "[-1, 2, 4]");
  const LoadedStudy s = from_json(j);
  ASSERT_EQ(s.diagnostics.warnings.size(), 1u);
  EXPECT_EQ(s.diagnostics.warnings[0].code, "near_zero_realization");
}

TEST(LoadCsv, FixtureMatchesJson) {
  const LoadedStudy a = load_study(fixture("study.json"));
  const LoadedStudy b = load_study(fixture("study.csv"));
  EXPECT_EQ(a.study.study_id, b.study.study_id);
  EXPECT_EQ(a.study.quantile_levels, b.study.quantile_levels);
  ASSERT_EQ(a.study.variables.size(), b.study.variables.size());
  for (std::size_t i = 0; i < a.study.variables.size(); ++i) {
    EXPECT_EQ(a.study.variables[i].variable_id, b.study.variables[i].variable_id);
    EXPECT_EQ(a.study.variables[i].realization, b.study.variables[i].realization);
    EXPECT_EQ(a.study.variables[i].unit, b.study.variables[i].unit);
    for (const auto& [id, q] : a.study.variables[i].assessments) {
      EXPECT_EQ(q.values(), b.study.variables[i].assessments.at(id).values());
    }
  }
}

TEST(LoadCsv, ColumnOrderAndQuoting) {
  const LoadedStudy s = from_csv(
      "expert_id,q95,q05,q50,realization,variable_id,study_id,unit\r\n"
      "\"e, one\",4,1,2,3,v,s,\"kg\"\r\n\r\n");
  EXPECT_EQ(s.study.quantile_levels, (std::vector<double>{0.05, 0.5, 0.95}));
  EXPECT_EQ(s.study.variables[0].assessments.at("e, one").values(), (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(s.study.variables[0].unit, "kg");
}

TEST(LoadCsv, ErrorsCarryLineNumbers) {
  const std::string head = "study_id,variable_id,expert_id,q05,q50,q95,realization\n";
  EXPECT_NE(error_of([&] { from_csv(head + "s,v,e,1,2,x,3\n"); }).find("line 2, column 'q95'"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv(head + "s,v,e,1,2,4,3\ns,v,f,1,1,4,3\n"); }).find("line 3"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv(head + "s,v,e,1,2,4,3\ns,v,e,1,2,4,3\n"); }).find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv(head + "s,v,e,1,2,4,3\ns,v,f,1,2,4,5\n"); })
                .find("realization for variable 'v' differs"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv(head + "s,v,e,1,2\n"); }).find("expected 7 fields"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv("study_id,variable_id,q05\n"); }).find("missing required"),
            std::string::npos);
  EXPECT_NE(error_of([&] { from_csv(head); }).find("no data rows"), std::string::npos);
}

TEST(LoadStudy, MissingFileNamesPath) {
  const std::string msg = error_of([] { load_study("/nonexistent/study.json"); });
  EXPECT_NE(msg.find("/nonexistent/study.json"), std::string::npos);
  EXPECT_EQ(format_from_path("a/b.CSV"), StudyFormat::csv);
  EXPECT_EQ(format_from_path("a/b.json"), StudyFormat::json);
  EXPECT_THROW(parse_format("xls"), InputError);
}

TEST(WriteStudy, RoundTripIsIdempotent) {
  const LoadedStudy a = load_study(fixture("study.csv"));
  std::ostringstream first;
  write_study_json(a.study, first);
  const LoadedStudy b = from_json(first.str());
  std::ostringstream second;
  write_study_json(b.study, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(b.study.variables[2].realization, 4.2);
}

TEST(WriteReport, DeterministicAndGolden) {
  const LoadedStudy s = load_study(fixture("study.json"));
  const ScoreReport rep = score_study(s.study);
  const auto a = render_report(rep);
  const auto b = render_report(score_study(s.study));
  EXPECT_EQ(a, b);
  const fs::path dir = fs::temp_directory_path() / "crpssa_study_io_test";
  fs::remove_all(dir);
  const auto files = write_report(rep, dir);
  ASSERT_EQ(files.size(), kReportFiles.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::ifstream written(files[i], std::ios::binary);
    std::ifstream golden(fixture("golden") / kReportFiles[i], std::ios::binary);
    std::stringstream w, g;
    w << written.rdbuf();
    g << golden.rdbuf();
    EXPECT_EQ(w.str(), g.str()) << kReportFiles[i];
  }
  fs::remove_all(dir);
}

TEST(WriteReport, EmptyReportWritesNothing) {
  ScoreReport rep;
  rep.study_id = "empty";
  const fs::path dir = fs::temp_directory_path() / "crpssa_empty_report";
  fs::remove_all(dir);
  EXPECT_THROW(write_report(rep, dir), InputError);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(WriteReport, UnwritableDirectoryNamesPath) {
  const LoadedStudy s = load_study(fixture("study.json"));
  const std::string msg = error_of([&] { write_report(score_study(s.study), "/proc/nope/out"); });
  EXPECT_NE(msg.find("/proc/nope/out"), std::string::npos) << msg;
}

TEST(FormatNumber, TwelveDigits) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(ScoringConfigJson, ParsesAndValidates) {
  std::istringstream in(R"({"overshoot": 0.25, "convention": "cdf", "threads": 3,
                             "correlation_pairs": [["crps_sa", "n_vars"]]})");
  const ScoringConfig c = parse_scoring_config(in);
  EXPECT_EQ(c.overshoot, 0.25);
  EXPECT_EQ(c.convention, SaConvention::cdf);
  EXPECT_EQ(c.threads, 3);
  ASSERT_EQ(c.correlation_pairs.size(), 1u);
  std::istringstream bad(R"({"overshoot": -1})");
  EXPECT_THROW(parse_scoring_config(bad), InputError);
  std::istringstream unknown(R"({"oversh00t": 1})");
  EXPECT_THROW(parse_scoring_config(unknown), InputError);
}

}  // namespace
}  // namespace crpssa
