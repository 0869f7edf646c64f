#include "crpssa/study_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "crpssa/error.hpp"
#include "json.hpp"

namespace crpssa {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw InputError("schema error at " + where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(where, "non-finite number");
  return d;
}

std::string string_at(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

void validate_levels(const std::vector<double>& levels, const std::string& where) {
  if (levels.empty()) schema_error(where, "no quantile levels");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (!(levels[j] > 0.0 && levels[j] < 1.0)) schema_error(where, "levels must lie in (0, 1)");
    if (j > 0 && !(levels[j] > levels[j - 1])) {
      schema_error(where, "levels must be strictly increasing");
    }
  }
}

QuantileAssessment make_assessment(const std::vector<double>& levels, std::vector<double> values,
                                   const std::string& where) {
  if (values.size() != levels.size()) {
    schema_error(where, "expected " + std::to_string(levels.size()) + " quantile values, got " +
                            std::to_string(values.size()));
  }
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (!(values[j] > values[j - 1])) schema_error(where, "non-increasing quantile values");
  }
  return QuantileAssessment(levels, std::move(values));
}

LoadedStudy finish(StudyRecord study) {
  if (study.variables.empty()) throw InputError("study '" + study.study_id + "' has no variables");
  if (study.expert_ids().empty()) {
    throw InputError("study '" + study.study_id + "' has no expert assessments");
  }
  LoadedStudy out;
  std::set<std::string> units;
  for (const CalibrationVariable& v : study.variables) {
    units.insert(v.unit);
    if (std::abs(v.realization) < MapeOptions{}.epsilon) {
      out.diagnostics.warnings.push_back(
          {"near_zero_realization",
           "variable '" + v.variable_id + "' has a realization near zero; MAPE is unstable"});
    }
  }
  if (units.size() > 1) {
    out.diagnostics.warnings.push_back(
        {"mixed_units", "units are opaque labels; MAPE depends on them, SA scores do not"});
  }
  out.diagnostics.dropped_experts = drop_incomplete_experts(study);
  out.study = std::move(study);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits one CSV record; double quotes delimit fields containing commas.
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw InputError("line " + std::to_string(line_no) + ": unterminated quote");
  out.push_back(cur);
  for (std::string& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

double parse_csv_number(const std::string& text, std::size_t line_no, const std::string& column) {
  const std::string where = "line " + std::to_string(line_no) + ", column '" + column + "'";
  if (text.empty()) throw InputError(where + ": empty value");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError(where + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw InputError(where + ": not a finite number: '" + text + "'");
  }
  return v;
}

// "q05" -> 0.05, "q5" -> 0.5, "q975" -> 0.975.
std::optional<double> quantile_column(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'q' && name[0] != 'Q')) return std::nullopt;
  const std::string digits = name.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return std::stod("0." + digits);
}

json rounded(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

StudyFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? StudyFormat::csv : StudyFormat::json;
}

StudyFormat parse_format(std::string_view text) {
  if (text == "json") return StudyFormat::json;
  if (text == "csv") return StudyFormat::csv;
  throw InputError("unknown study format '" + std::string(text) + "' (expected json or csv)");
}

LoadedStudy load_study_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("$", "top level must be an object");

  StudyRecord study;
  study.study_id = string_at(field(doc, "study_id", "$"), "$.study_id");

  if (const auto bg = doc.find("background"); bg != doc.end()) {
    const std::string b = string_at(*bg, "$.background");
    if (b == "log_uniform" || b == "log-uniform") {
      schema_error("$.background", "log-uniform background measure is not supported");
    }
    if (b != "uniform") schema_error("$.background", "unknown background '" + b + "'");
  }

  const json& levels = field(doc, "quantile_levels", "$");
  if (!levels.is_array()) schema_error("$.quantile_levels", "expected an array");
  for (std::size_t j = 0; j < levels.size(); ++j) {
    study.quantile_levels.push_back(
        number_at(levels[j], "$.quantile_levels[" + std::to_string(j) + "]"));
  }
  validate_levels(study.quantile_levels, "$.quantile_levels");

  if (const auto cfg = doc.find("config"); cfg != doc.end()) {
    if (!cfg->is_object()) schema_error("$.config", "expected an object");
    for (const auto& [key, value] : cfg->items()) {
      const std::string where = "$.config." + key;
      if (key == "overshoot") {
        study.config.overshoot = number_at(value, where);
      } else if (key == "convention") {
        study.config.convention = parse_convention(string_at(value, where));
      } else if (key == "range_includes_realization") {
        if (!value.is_boolean()) schema_error(where, "expected a boolean");
        study.config.range_includes_realization = value.get<bool>();
      } else {
        schema_error(where, "unknown config key");
      }
    }
  }

  const json& vars = field(doc, "variables", "$");
  if (!vars.is_array()) schema_error("$.variables", "expected an array");
  std::set<std::string> seen_vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string vw = "$.variables[" + std::to_string(i) + "]";
    const json& v = vars[i];
    CalibrationVariable var;
    var.variable_id = string_at(field(v, "variable_id", vw), vw + ".variable_id");
    if (!seen_vars.insert(var.variable_id).second) {
      schema_error(vw + ".variable_id", "duplicate variable id '" + var.variable_id + "'");
    }
    var.realization = number_at(field(v, "realization", vw), vw + ".realization");
    if (const auto u = v.find("unit"); u != v.end()) var.unit = string_at(*u, vw + ".unit");
    const json& as = field(v, "assessments", vw);
    if (!as.is_array()) schema_error(vw + ".assessments", "expected an array");
    for (std::size_t k = 0; k < as.size(); ++k) {
      const std::string aw = vw + ".assessments[" + std::to_string(k) + "]";
      const std::string id = string_at(field(as[k], "expert_id", aw), aw + ".expert_id");
      const json& vals = field(as[k], "values", aw);
      if (!vals.is_array()) schema_error(aw + ".values", "expected an array");
      std::vector<double> values;
      for (std::size_t j = 0; j < vals.size(); ++j) {
        values.push_back(number_at(vals[j], aw + ".values[" + std::to_string(j) + "]"));
      }
      if (var.assessments.contains(id)) {
        schema_error(aw + ".expert_id", "duplicate expert id '" + id + "' for this variable");
      }
      var.assessments.emplace(id, make_assessment(study.quantile_levels, std::move(values),
                                                  aw + ".values"));
    }
    study.variables.push_back(std::move(var));
  }
  return finish(std::move(study));
}

LoadedStudy load_study_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line = line.substr(3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    header = split_csv(line, line_no);
    break;
  }
  if (header.empty()) throw InputError("CSV study: missing header row");

  std::map<std::string, std::size_t> col;
  std::vector<std::pair<double, std::size_t>> qcols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!col.emplace(header[i], i).second) {
      throw InputError("line " + std::to_string(line_no) + ": duplicate column '" + header[i] + "'");
    }
    if (const auto level = quantile_column(header[i])) qcols.emplace_back(*level, i);
  }
  for (const char* required : {"study_id", "variable_id", "expert_id", "realization"}) {
    if (!col.contains(required)) {
      throw InputError("CSV header: missing required column '" + std::string(required) + "'");
    }
  }
  if (qcols.empty()) throw InputError("CSV header: no quantile columns (q05, q50, ...)");
  std::sort(qcols.begin(), qcols.end());

  StudyRecord study;
  for (const auto& [level, idx] : qcols) study.quantile_levels.push_back(level);
  validate_levels(study.quantile_levels, "CSV header");

  std::map<std::string, std::size_t> var_index;
  std::vector<std::size_t> realization_line;
  bool have_study = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::vector<std::string> f = split_csv(line, line_no);
    const std::string ln = "line " + std::to_string(line_no);
    if (f.size() != header.size()) {
      throw InputError(ln + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(f.size()));
    }
    const std::string& sid = f[col["study_id"]];
    if (!have_study) {
      study.study_id = sid;
      have_study = true;
    } else if (sid != study.study_id) {
      throw InputError(ln + ": file mixes study ids '" + study.study_id + "' and '" + sid + "'");
    }
    const std::string& vid = f[col["variable_id"]];
    const std::string& eid = f[col["expert_id"]];
    if (vid.empty()) throw InputError(ln + ": empty variable_id");
    if (eid.empty()) throw InputError(ln + ": empty expert_id");
    const double real = parse_csv_number(f[col["realization"]], line_no, "realization");

    auto [it, inserted] = var_index.emplace(vid, study.variables.size());
    if (inserted) {
      CalibrationVariable var;
      var.variable_id = vid;
      var.realization = real;
      if (col.contains("unit")) var.unit = f[col["unit"]];
      study.variables.push_back(std::move(var));
      realization_line.push_back(line_no);
    }
    CalibrationVariable& var = study.variables[it->second];
    if (var.realization != real) {
      throw InputError(ln + ": realization for variable '" + vid + "' differs from line " +
                       std::to_string(realization_line[it->second]));
    }
    std::vector<double> values;
    for (const auto& [level, idx] : qcols) {
      values.push_back(parse_csv_number(f[idx], line_no, header[idx]));
    }
    if (var.assessments.contains(eid)) {
      throw InputError(ln + ": duplicate row for expert '" + eid + "' on variable '" + vid + "'");
    }
    try {
      var.assessments.emplace(eid, make_assessment(study.quantile_levels, std::move(values), ln));
    } catch (const InputError& e) {
      throw InputError(std::string(e.what()));
    }
  }
  if (!have_study) throw InputError("CSV study: no data rows");
  return finish(std::move(study));
}

LoadedStudy load_study(const std::filesystem::path& path, StudyFormat format) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  try {
    return format == StudyFormat::csv ? load_study_csv(in) : load_study_json(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

LoadedStudy load_study(const std::filesystem::path& path) {
  return load_study(path, format_from_path(path));
}

ScoringConfig parse_scoring_config(std::istream& in, ScoringConfig base) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed config JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("config", "top level must be an object");
  auto integer = [](const json& v, const std::string& where) {
    if (!v.is_number_integer()) schema_error(where, "expected an integer");
    return v.get<long long>();
  };
  auto boolean = [](const json& v, const std::string& where) {
    if (!v.is_boolean()) schema_error(where, "expected a boolean");
    return v.get<bool>();
  };
  for (const auto& [key, v] : doc.items()) {
    const std::string where = "config." + key;
    if (key == "overshoot") {
      base.overshoot = number_at(v, where);
    } else if (key == "convention") {
      base.convention = parse_convention(string_at(v, where));
    } else if (key == "range_includes_realization") {
      base.range_includes_realization = boolean(v, where);
    } else if (key == "truncation_tol") {
      base.sqsum.truncation_tol = number_at(v, where);
    } else if (key == "max_terms") {
      const long long m = integer(v, where);
      if (m < 1) schema_error(where, "must be >= 1");
      base.sqsum.max_terms = static_cast<std::size_t>(m);
    } else if (key == "mape_epsilon") {
      base.mape.epsilon = number_at(v, where);
    } else if (key == "mape_unstable_threshold") {
      base.mape.unstable_threshold = number_at(v, where);
    } else if (key == "mape_exclude_near_zero") {
      base.mape.exclude_near_zero = boolean(v, where);
    } else if (key == "histogram_bins") {
      base.histogram_bins = static_cast<int>(integer(v, where));
    } else if (key == "threads") {
      base.threads = static_cast<int>(integer(v, where));
    } else if (key == "correlation_pairs") {
      if (!v.is_array()) schema_error(where, "expected an array of [x, y] pairs");
      base.correlation_pairs.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) schema_error(w, "expected [x, y]");
        base.correlation_pairs.emplace_back(string_at(v[i][0], w), string_at(v[i][1], w));
      }
    } else {
      schema_error(where, "unknown config key");
    }
  }
  base.validate();
  return base;
}

ScoringConfig load_scoring_config(const std::filesystem::path& path, ScoringConfig base) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  try {
    return parse_scoring_config(in, std::move(base));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_study_json(const StudyRecord& study, std::ostream& out) {
  json doc;
  doc["study_id"] = study.study_id;
  doc["quantile_levels"] = study.quantile_levels;
  if (study.config.overshoot || study.config.convention ||
      study.config.range_includes_realization) {
    json cfg = json::object();
    if (study.config.overshoot) cfg["overshoot"] = *study.config.overshoot;
    if (study.config.convention) cfg["convention"] = std::string(to_string(*study.config.convention));
    if (study.config.range_includes_realization) {
      cfg["range_includes_realization"] = *study.config.range_includes_realization;
    }
    doc["config"] = cfg;
  }
  json vars = json::array();
  for (const CalibrationVariable& v : study.variables) {
    json jv;
    jv["variable_id"] = v.variable_id;
    jv["realization"] = v.realization;
    jv["unit"] = v.unit;
    json as = json::array();
    for (const auto& [id, q] : v.assessments) {
      as.push_back({{"expert_id", id}, {"values", q.values()}});
    }
    jv["assessments"] = as;
    vars.push_back(jv);
  }
  doc["variables"] = vars;
  out << doc.dump(2) << '\n';
}

void write_study_json(const StudyRecord& study, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write study file '" + path.string() + "'");
  write_study_json(study, out);
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

std::vector<std::pair<std::string, std::string>> render_report(const ScoreReport& r) {
  const ScoringConfig& c = r.config;
  json cfg;
  cfg["overshoot"] = rounded(c.overshoot);
  cfg["range_includes_realization"] = c.range_includes_realization;
  cfg["convention"] = std::string(to_string(c.convention));
  cfg["truncation_tol"] = rounded(c.sqsum.truncation_tol);
  cfg["max_terms"] = c.sqsum.max_terms;
  cfg["mape_epsilon"] = rounded(c.mape.epsilon);
  cfg["mape_unstable_threshold"] = rounded(c.mape.unstable_threshold);
  cfg["mape_exclude_near_zero"] = c.mape.exclude_near_zero;
  cfg["histogram_bins"] = c.histogram_bins;
  cfg["log_floor"] = 1e-300;
  json pairs = json::array();
  for (const auto& [x, y] : c.correlation_pairs) pairs.push_back({x, y});
  cfg["correlation_pairs"] = pairs;

  json experts = json::array();
  for (const ExpertScoreCard& e : r.experts) {
    json je;
    je["expert_id"] = e.expert_id;
    je["n_vars"] = e.n_vars;
    je["z_sum"] = rounded(e.z_sum);
    je["crps_sa"] = rounded(e.crps_sa);
    je["crps_sa_convention"] = std::string(to_string(e.crps_sa_convention));
    je["crps_cdf"] = rounded(e.crps_cdf);
    je["cm_sa"] = rounded(e.cm_sa);
    je["bin_counts"] = e.bin_counts;
    je["above_median"] = e.above_median;
    je["location_bias"] = rounded(e.location_bias);
    je["mape"] = rounded(e.mape);
    je["mape_unstable"] = e.mape_unstable;
    je["clamped_pits"] = e.clamped_pits;
    json jvars = json::array();
    for (const VariableScore& v : e.variables) {
      json jv;
      jv["variable_id"] = v.variable_id;
      jv["realization"] = rounded(v.realization);
      jv["median"] = rounded(v.median);
      jv["pit"] = rounded(v.pit);
      jv["out_of_support"] = v.out_of_support;
      jv["crps"] = rounded(v.crps);
      jv["z"] = rounded(v.z);
      jv["bin"] = v.bin;
      json knots = json::array();
      for (const Knot& k : v.knots) knots.push_back({rounded(k.x), rounded(k.p)});
      jv["knots"] = knots;
      jvars.push_back(jv);
    }
    je["variables"] = jvars;
    experts.push_back(je);
  }

  json excluded = json::array();
  for (const DroppedExpert& d : r.excluded) {
    excluded.push_back({{"expert_id", d.expert_id}, {"reason", d.reason}, {"detail", d.detail}});
  }
  json corr = json::array();
  for (const CorrelationResult& k : r.correlations) {
    json jc;
    jc["x"] = k.x;
    jc["y"] = k.y;
    jc["subset"] = k.subset;
    jc["n"] = k.n;
    jc["spearman"] = k.spearman ? rounded(*k.spearman) : json(nullptr);
    jc["pearson"] = k.pearson ? rounded(*k.pearson) : json(nullptr);
    corr.push_back(jc);
  }
  json ranking = json::array();
  for (const RankedExpert& k : r.ranking) {
    ranking.push_back({{"rank", k.rank},
                       {"expert_id", k.expert_id},
                       {"crps_sa", rounded(k.crps_sa)},
                       {"cm_sa", rounded(k.cm_sa)}});
  }

  json doc;
  doc["study_id"] = r.study_id;
  doc["n_variables"] = r.n_variables;
  doc["config"] = cfg;
  doc["summary"] = {{"n_experts", r.experts.size()},
                    {"n_excluded", r.excluded.size()},
                    {"log_geomean_crps_sa", rounded(r.log_geomean_crps_sa)},
                    {"log_geomean_cm_sa", rounded(r.log_geomean_cm_sa)},
                    {"floored_crps_sa", r.floored_crps_sa},
                    {"floored_cm_sa", r.floored_cm_sa},
                    {"clamped_pits", r.clamped_pits},
                    {"series_tail_bound", rounded(r.series_tail_bound)}};
  doc["experts"] = experts;
  doc["excluded"] = excluded;
  doc["correlations"] = corr;
  doc["ranking"] = ranking;
  doc["pit_histogram"] = {{"bins", r.pit_histogram.size()}, {"counts", r.pit_histogram}};

  std::ostringstream csv;
  csv << "expert_id,n_vars,crps_sa,crps_sa_convention,cm_sa,location_bias,mape,mape_unstable,"
         "z_sum,crps_cdf,above_median,clamped_pits";
  const std::size_t bins = r.experts.empty() ? 0 : r.experts.front().bin_counts.size();
  for (std::size_t b = 0; b < bins; ++b) csv << ",bin_" << b;
  csv << '\n';
  for (const ExpertScoreCard& e : r.experts) {
    csv << e.expert_id << ',' << e.n_vars << ',' << format_number(e.crps_sa) << ','
        << to_string(e.crps_sa_convention) << ',' << format_number(e.cm_sa) << ','
        << format_number(e.location_bias) << ',' << format_number(e.mape) << ','
        << (e.mape_unstable ? "true" : "false") << ',' << format_number(e.z_sum) << ','
        << format_number(e.crps_cdf) << ',' << e.above_median << ',' << e.clamped_pits;
    for (int count : e.bin_counts) csv << ',' << count;
    csv << '\n';
  }

  std::ostringstream rank;
  rank << "rank,expert_id,crps_sa,cm_sa\n";
  for (const RankedExpert& k : r.ranking) {
    rank << k.rank << ',' << k.expert_id << ',' << format_number(k.crps_sa) << ','
         << format_number(k.cm_sa) << '\n';
  }

  std::ostringstream hist;
  hist << "bin_low,bin_high,count\n";
  const double width = 1.0 / static_cast<double>(r.pit_histogram.size());
  for (std::size_t b = 0; b < r.pit_histogram.size(); ++b) {
    hist << format_number(b * width) << ',' << format_number((b + 1) * width) << ','
         << r.pit_histogram[b] << '\n';
  }

  return {{kReportFiles[0], doc.dump(2) + "\n"},
          {kReportFiles[1], csv.str()},
          {kReportFiles[2], rank.str()},
          {kReportFiles[3], hist.str()}};
}

std::vector<std::filesystem::path> write_report(const ScoreReport& report,
                                                const std::filesystem::path& dir) {
  if (report.experts.empty()) {
    throw InputError("report for study '" + report.study_id + "' has no scored experts");
  }
  const auto files = render_report(report);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    const std::filesystem::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw InputError("cannot write '" + p.string() + "'");
    written.push_back(p);
  }
  return written;
}

}  // namespace crpssa
