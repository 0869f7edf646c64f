#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "crpssa/pipeline.hpp"
#include "crpssa/study.hpp"

namespace crpssa {

enum class StudyFormat { json, csv };

// ".csv" -> csv, anything else -> json.
StudyFormat format_from_path(const std::filesystem::path& path);
StudyFormat parse_format(std::string_view text);

struct LoadedStudy {
  StudyRecord study;
  IngestionDiagnostics diagnostics;
};

// Parses and validates a study. Experts that did not assess every variable
// are removed and listed in diagnostics.dropped_experts. Schema violations
// throw InputError naming the offending field (JSON) or line (CSV).
LoadedStudy load_study(const std::filesystem::path& path, StudyFormat format);
LoadedStudy load_study(const std::filesystem::path& path);
LoadedStudy load_study_json(std::istream& in);
LoadedStudy load_study_csv(std::istream& in);

// Canonical JSON form of a study; load_study_json reads it back unchanged.
void write_study_json(const StudyRecord& study, std::ostream& out);
void write_study_json(const StudyRecord& study, const std::filesystem::path& path);

// Report files, in the order write_report creates them.
inline const std::vector<std::string> kReportFiles{"report.json", "experts.csv",
                                                   "sa_ranking.csv", "pit_histogram.csv"};

// Renders every report file into memory. Byte-stable: sorted JSON keys,
// numbers at 12 significant digits.
std::vector<std::pair<std::string, std::string>> render_report(const ScoreReport& report);

// Writes the rendered files into `dir` (created if needed) and returns their
// paths. Nothing is written unless every file rendered successfully.
std::vector<std::filesystem::path> write_report(const ScoreReport& report,
                                                const std::filesystem::path& dir);

// Applies a JSON object of scoring settings on top of `base`. Keys:
// overshoot, convention, range_includes_realization, truncation_tol,
// max_terms, mape_epsilon, mape_unstable_threshold, mape_exclude_near_zero,
// histogram_bins, threads, correlation_pairs ([[x, y], ...]).
ScoringConfig parse_scoring_config(std::istream& in, ScoringConfig base = {});
ScoringConfig load_scoring_config(const std::filesystem::path& path, ScoringConfig base = {});

// "%.12g"
std::string format_number(double value);

}  // namespace crpssa
