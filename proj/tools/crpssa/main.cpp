#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crpssa/error.hpp"
#include "crpssa/pipeline.hpp"
#include "crpssa/selftest.hpp"
#include "crpssa/sqsum_dist.hpp"
#include "crpssa/stats.hpp"
#include "crpssa/study_io.hpp"
#include "crpssa/synthetic.hpp"

namespace fs = std::filesystem;
using namespace crpssa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct ScoreArgs {
  std::string study;
  std::string format;
  std::string convention;
  std::optional<double> overshoot;
  std::string out = "report";
  std::string config;
  std::optional<int> threads;
};

struct DistArgs {
  int n = 0;
  std::optional<double> s;
  std::optional<int> table;
  double tol = SqSumOptions{}.truncation_tol;
  std::optional<std::size_t> ecdf_samples;
  std::uint64_t seed = 0;
  std::string out;
};

struct SimulateArgs {
  std::size_t experts = 1;
  std::size_t vars = 10;
  std::string profile = "calibrated";
  std::optional<double> concentration;
  std::optional<double> shift;
  std::vector<double> grid;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  std::string convention;
  double overshoot = SyntheticOptions{}.overshoot;
  int threads = 1;
  std::string out = "simulation";
};

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

int run_score(const ScoreArgs& a) {
  ScoringConfig config;
  if (!a.config.empty()) config = load_scoring_config(a.config);
  if (a.overshoot) config.overshoot = *a.overshoot;
  if (!a.convention.empty()) config.convention = parse_convention(a.convention);
  if (a.threads) config.threads = *a.threads;
  config.validate();

  const StudyFormat format = a.format.empty() ? format_from_path(a.study) : parse_format(a.format);
  LoadedStudy loaded = load_study(a.study, format);
  // Explicit flags win over the study's own overrides.
  if (a.overshoot) loaded.study.config.overshoot.reset();
  if (!a.convention.empty()) loaded.study.config.convention.reset();

  ScoreReport report = score_study(loaded.study, config);
  report.excluded.insert(report.excluded.begin(), loaded.diagnostics.dropped_experts.begin(),
                         loaded.diagnostics.dropped_experts.end());
  for (const DroppedExpert& d : report.excluded) {
    std::cerr << "dropped expert " << d.expert_id << " (" << d.reason << "): " << d.detail << '\n';
  }
  for (const IngestionWarning& w : loaded.diagnostics.warnings) {
    std::cerr << "warning [" << w.code << "]: " << w.message << '\n';
  }
  if (report.clamped_pits > 0) {
    std::cerr << "warning [clamped_pits]: " << report.clamped_pits
              << " realization(s) outside the intrinsic range\n";
  }
  const auto files = write_report(report, a.out);
  std::cout << "study " << report.study_id << ": " << report.experts.size() << " expert(s), "
            << report.n_variables << " variable(s)\n";
  std::cout << "log geomean crps_sa " << format_number(report.log_geomean_crps_sa)
            << ", cm_sa " << format_number(report.log_geomean_cm_sa) << '\n';
  for (const fs::path& f : files) std::cout << "wrote " << f.string() << '\n';
  return kExitOk;
}

int run_dist(const DistArgs& a) {
  if (a.n < 1) throw InputError("--n must be >= 1");
  if (a.table && *a.table < 2) throw InputError("--table needs at least 2 points");
  if (!(a.tol > 0.0)) throw InputError("--tol must be > 0");
  SqSumOptions opts;
  opts.truncation_tol = a.tol;
  const SqSumDistribution dist(a.n, opts);

  std::ostringstream text;
  if (a.s) {
    if (!std::isfinite(*a.s)) throw InputError("--s must be finite");
    text << format_number(dist.cdf(*a.s)) << '\n';
  } else {
    const int points = *a.table;
    std::vector<double> s(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) s[j] = a.n * static_cast<double>(j) / (points - 1);
    const std::vector<double> f = dist.tabulate(s);
    std::optional<EcdfOracle> ecdf;
    if (a.ecdf_samples) {
      if (*a.ecdf_samples < 1) throw InputError("--with-ecdf needs at least one sample");
      ecdf.emplace(a.n, *a.ecdf_samples, a.seed);
    }
    text << "s,exact" << (ecdf ? ",empirical" : "") << '\n';
    for (std::size_t j = 0; j < s.size(); ++j) {
      text << format_number(s[j]) << ',' << format_number(f[j]);
      if (ecdf) text << ',' << format_number((*ecdf)(s[j]));
      text << '\n';
    }
  }
  if (a.out.empty()) {
    std::cout << text.str();
  } else {
    write_text(a.out, text.str());
  }
  return kExitOk;
}

ExpertProfile profile_for(const std::string& name, std::optional<double> concentration,
                          std::optional<double> shift) {
  ExpertProfile p;
  p.kind = parse_profile_kind(name);
  switch (p.kind) {
    case ProfileKind::calibrated:
      break;
    case ProfileKind::overconfident:
      p.concentration = 0.5;
      break;
    case ProfileKind::underconfident:
      p.concentration = 2.0;
      break;
    case ProfileKind::location_biased:
      p.shift = 1.0;
      break;
  }
  if (concentration) p.concentration = *concentration;
  if (shift) p.shift = *shift;
  p.validate();
  return p;
}

ExpertProfile grid_profile(double c) {
  ExpertProfile p;
  p.concentration = c;
  p.kind = c == 1.0 ? ProfileKind::calibrated
                    : (c < 1.0 ? ProfileKind::overconfident : ProfileKind::underconfident);
  p.validate();
  return p;
}

struct Column {
  std::vector<double> crps_sa, cm_sa;
};

Column collect(const std::vector<ReplicationResult>& results) {
  Column c;
  for (const ReplicationResult& r : results) {
    for (const ExpertScoreCard& e : r.experts) {
      c.crps_sa.push_back(e.crps_sa);
      c.cm_sa.push_back(e.cm_sa);
    }
  }
  return c;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int run_simulate(const SimulateArgs& a) {
  if (a.replications < 1) throw InputError("--replications must be >= 1");
  ScoringConfig scoring;
  if (!a.convention.empty()) scoring.convention = parse_convention(a.convention);
  SyntheticOptions synth;
  synth.overshoot = a.overshoot;

  std::vector<ExpertProfile> profiles;
  if (a.grid.empty()) {
    profiles.push_back(profile_for(a.profile, a.concentration, a.shift));
  } else {
    const ProfileKind kind = parse_profile_kind(a.profile);
    if (kind == ProfileKind::location_biased) {
      throw InputError("--concentration-grid cannot be combined with a location_biased profile");
    }
    if (a.concentration || a.shift) {
      throw InputError("--concentration-grid replaces --concentration and --shift");
    }
    for (double c : a.grid) profiles.push_back(grid_profile(c));
  }

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());

  std::ostringstream rows;
  rows << "concentration,shift,replication,seed,expert_id,z_sum,crps_sa,cm_sa,location_bias\n";
  std::ostringstream summary;
  summary << "concentration,shift,replications,experts,vars,mean_crps_sa,mean_cm_sa,"
             "ks_crps_sa,ks_pvalue_crps_sa,ks_cm_sa,ks_pvalue_cm_sa\n";
  std::vector<double> means_crps, means_cm;
  for (const ExpertProfile& p : profiles) {
    const auto results = run_replications(a.experts, a.vars, {p}, a.replications, a.seed,
                                          scoring, synth, a.threads);
    for (std::size_t r = 0; r < results.size(); ++r) {
      for (const ExpertScoreCard& e : results[r].experts) {
        rows << format_number(p.concentration) << ',' << format_number(p.shift) << ',' << r << ','
             << results[r].seed << ',' << e.expert_id << ',' << format_number(e.z_sum) << ','
             << format_number(e.crps_sa) << ',' << format_number(e.cm_sa) << ','
             << format_number(e.location_bias) << '\n';
      }
    }
    const Column c = collect(results);
    const double ks_crps = ks_uniform(c.crps_sa);
    const double ks_cm = ks_uniform(c.cm_sa);
    means_crps.push_back(mean(c.crps_sa));
    means_cm.push_back(mean(c.cm_sa));
    summary << format_number(p.concentration) << ',' << format_number(p.shift) << ','
            << a.replications << ',' << a.experts << ',' << a.vars << ','
            << format_number(means_crps.back()) << ',' << format_number(means_cm.back()) << ','
            << format_number(ks_crps) << ',' << format_number(ks_pvalue(ks_crps, c.crps_sa.size()))
            << ',' << format_number(ks_cm) << ','
            << format_number(ks_pvalue(ks_cm, c.cm_sa.size())) << '\n';
  }

  write_text(dir / "replications.csv", rows.str());
  write_text(dir / "summary.csv", summary.str());
  std::cout << summary.str();
  if (profiles.size() > 1) {
    // Grid points sorted by concentration, descending, for the monotonicity check.
    std::vector<std::size_t> order(profiles.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return profiles[x].concentration > profiles[y].concentration;
    });
    bool crps_mono = true, cm_mono = true;
    for (std::size_t i = 1; i < order.size(); ++i) {
      crps_mono = crps_mono && means_crps[order[i]] < means_crps[order[i - 1]];
      cm_mono = cm_mono && means_cm[order[i]] < means_cm[order[i - 1]];
    }
    std::cout << "mean crps_sa decreasing as concentration decreases: "
              << (crps_mono ? "yes" : "no") << '\n'
              << "mean cm_sa decreasing as concentration decreases: " << (cm_mono ? "yes" : "no")
              << '\n';
  }
  std::cout << "wrote " << (dir / "replications.csv").string() << '\n'
            << "wrote " << (dir / "summary.csv").string() << '\n';
  return kExitOk;
}

int run_selftest(int threads) {
  SelftestOptions opts;
  opts.threads = threads;
  const std::vector<CriterionResult> results = run_acceptance(opts, std::cout);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const CriterionResult& r) { return r.passed; });
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-invariant CRPS and Classical Model statistical accuracy for expert studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "crpssa 0.1.0");

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Score a study file and write report files");
  sc->add_option("study", score.study, "Study file (JSON or CSV)")->required();
  sc->add_option("--format", score.format, "Input format (default: from extension)")
      ->check(CLI::IsMember({"json", "csv"}));
  sc->add_option("--convention", score.convention, "CRPS-SA convention")
      ->check(CLI::IsMember({"survival", "cdf", "two-sided", "two_sided"}));
  sc->add_option("--overshoot", score.overshoot, "Intrinsic range overshoot (> 0)");
  sc->add_option("--out", score.out, "Output directory")->capture_default_str();
  sc->add_option("--config", score.config, "Scoring configuration JSON file");
  sc->add_option("--threads", score.threads, "Worker threads");

  DistArgs dist;
  auto* dc = app.add_subcommand("dist", "Evaluate the distribution of a sum of n squared uniforms");
  dc->add_option("--n", dist.n, "Number of summands")->required();
  auto* s_opt = dc->add_option("--s", dist.s, "Evaluate F_n at one point");
  auto* t_opt = dc->add_option("--table", dist.table, "Tabulate F_n at POINTS points on [0, n]");
  s_opt->excludes(t_opt);
  dc->add_option("--tol", dist.tol, "Series truncation tolerance")->capture_default_str();
  auto* e_opt = dc->add_option("--with-ecdf", dist.ecdf_samples,
                               "Add a Monte Carlo ECDF column from SAMPLES draws");
  e_opt->needs(t_opt);
  dc->add_option("--seed", dist.seed, "Seed for --with-ecdf")->capture_default_str();
  dc->add_option("--out", dist.out, "Write to a file instead of stdout");

  SimulateArgs sim;
  auto* mc = app.add_subcommand("simulate", "Score seeded synthetic studies");
  mc->add_option("--experts", sim.experts, "Experts per study")->capture_default_str();
  mc->add_option("--vars", sim.vars, "Calibration variables per study")->capture_default_str();
  mc->add_option("--profile", sim.profile,
                 "calibrated | overconfident | underconfident | location_biased")
      ->capture_default_str();
  mc->add_option("--concentration", sim.concentration, "Quantile-width multiplier");
  mc->add_option("--shift", sim.shift, "Median displacement in standard units");
  mc->add_option("--concentration-grid", sim.grid, "Run once per concentration")->delimiter(',');
  mc->add_option("--replications", sim.replications, "Independent studies")->capture_default_str();
  mc->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  mc->add_option("--convention", sim.convention, "CRPS-SA convention")
      ->check(CLI::IsMember({"survival", "cdf", "two-sided", "two_sided"}));
  mc->add_option("--overshoot", sim.overshoot, "Intrinsic range overshoot")->capture_default_str();
  mc->add_option("--threads", sim.threads, "Worker threads")->capture_default_str();
  mc->add_option("--out", sim.out, "Output directory")->capture_default_str();

  int selftest_threads = 1;
  auto* tc = app.add_subcommand("selftest", "Run the acceptance suite");
  tc->add_option("--threads", selftest_threads, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sc) return run_score(score);
    if (*dc) {
      if (!dist.s && !dist.table) throw InputError("dist needs --s or --table");
      return run_dist(dist);
    }
    if (*mc) return run_simulate(sim);
    if (*tc) return run_selftest(selftest_threads);
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << " (tail bound " << format_number(e.tail_bound())
              << ")\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}
