// darcli: command-line front end for DAR(1) simulation, fitting and Monte Carlo studies.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dar/error.hpp"
#include "dar/format.hpp"
#include "dar/harness/config.hpp"
#include "dar/harness/csv.hpp"
#include "dar/harness/study.hpp"

namespace {

using namespace dar;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 1;
    case ErrorKind::Parse:
    case ErrorKind::DegenerateSeries:
    case ErrorKind::Precondition:
    case ErrorKind::LengthMismatch:
      return 2;
    default:
      return 3;
  }
}

struct DesignFlags {
  std::optional<double> phi, alpha, omega, level;
  std::optional<std::string> innovation;
  std::optional<std::size_t> n, replications, B, burn_in;

  void add(CLI::App* app, bool study) {
    app->add_option("--phi", phi, "phi_0");
    app->add_option("--alpha", alpha, "alpha_0");
    app->add_option("--omega", omega, "omega_0");
    app->add_option("--innovation", innovation, "normal | laplace | st3");
    app->add_option("--n", n, "sample size");
    app->add_option("--burn-in", burn_in, "discarded leading draws (default: 500 if stationary)");
    if (study) {
      app->add_option("--replications", replications, "Monte Carlo replications");
      app->add_option("--B", B, "random-weighting resamples per replicate");
      app->add_option("--level", level, "test level / 1 - CI coverage");
    }
  }

  void apply(harness::StudyConfig& s) const {
    if (phi) s.params.phi = *phi;
    if (alpha) s.params.alpha = *alpha;
    if (omega) s.params.omega = *omega;
    if (innovation) s.innovation = model::parse_innovation(*innovation);
    if (n) s.n = *n;
    if (replications) s.replications = *replications;
    if (B) s.B = *B;
    if (level) s.level = *level;
    if (burn_in) s.burn_in = *burn_in;
  }
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, path + ": cannot open for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DAR(1) simulation, GLADE fitting, Lyapunov-exponent stationarity tests"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string config_path;
  app.add_option("--seed", seed, "root RNG seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a DAR(1) path and write it as CSV");
  DesignFlags sim_flags;
  sim_flags.add(sim, false);
  std::string sim_out;
  std::optional<double> sim_y0;
  sim->add_option("--y0", sim_y0, "start value (then burn-in defaults to 0)");
  sim->add_option("-o,--output", sim_out, "output CSV (default stdout)");

  // fit
  auto* fit = app.add_subcommand("fit", "fit a CSV series and test for stationarity");
  std::string fit_csv;
  std::size_t fit_B = 1000;
  double fit_level = 0.05;
  bool fit_as_csv = false;
  fit->add_option("series", fit_csv, "input series CSV")->required();
  fit->add_option("--B", fit_B, "random-weighting resamples");
  fit->add_option("--level", fit_level, "test level");
  fit->add_flag("--csv", fit_as_csv, "print the test report as a CSV row");

  // test
  auto* test = app.add_subcommand("test", "one-sided stationarity tests from gamma-hat and its SE");
  double t_gamma = 0.0;
  double t_se = 0.0;
  std::size_t t_n = 0;
  double t_level = 0.05;
  bool t_as_csv = false;
  test->add_option("--gamma-hat", t_gamma, "estimated Lyapunov exponent")->required();
  test->add_option("--se", t_se, "standard error of gamma-hat")->required();
  test->add_option("--n", t_n, "sample size")->required();
  test->add_option("--level", t_level, "test level");
  test->add_flag("--csv", t_as_csv, "print as a CSV row");

  // region
  auto* region = app.add_subcommand("region", "stationarity boundary alpha(phi) as CSV");
  std::optional<std::string> r_innov;
  std::optional<double> r_min, r_max;
  std::optional<std::size_t> r_points;
  std::string r_out;
  region->add_option("--innovation", r_innov, "normal | laplace | st3");
  region->add_option("--phi-min", r_min, "lower end of the phi grid");
  region->add_option("--phi-max", r_max, "upper end of the phi grid");
  region->add_option("--points", r_points, "grid points");
  region->add_option("-o,--output", r_out, "output CSV (default stdout)");

  // mc-table1
  auto* t1 = app.add_subcommand("mc-table1", "bias / SE / SEE / CP study");
  DesignFlags t1_flags;
  t1_flags.add(t1, true);
  std::string t1_out, t1_reps;
  t1->add_option("-o,--output", t1_out, "summary CSV (default stdout)");
  t1->add_option("--replicates-out", t1_reps, "per-replicate CSV");

  // mc-power
  auto* pw = app.add_subcommand("mc-power", "rejection frequencies over a phi grid");
  DesignFlags pw_flags;
  pw_flags.add(pw, true);
  std::string pw_which = "both";
  std::optional<std::vector<double>> pw_phis;
  std::string pw_out;
  pw->add_option("--which", pw_which, "ST | NS | both")
      ->check(CLI::IsMember({"ST", "NS", "both"}));
  pw->add_option("--phis", pw_phis, "phi_0 grid")->delimiter(',');
  pw->add_option("-o,--output", pw_out, "output CSV (default stdout)");

  // mc-aae
  auto* ae = app.add_subcommand("mc-aae", "paired AAE of GLADE and QMLE");
  DesignFlags ae_flags;
  ae_flags.add(ae, true);
  std::string ae_out;
  ae->add_option("-o,--output", ae_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    harness::HarnessConfig cfg;
    if (!config_path.empty()) cfg = harness::load_config(config_path);
    auto& study = cfg.study;
    if (seed) study.seed = *seed;
    if (threads) study.threads = *threads;

    if (*sim) {
      sim_flags.apply(study);
      model::validate(study.params);
      const model::InnovationSpec spec(study.innovation);
      auto stream = numerics::derive_stream(study.seed, 0);
      model::SignedLogSeries series;
      if (sim_y0) {
        const std::size_t burn_in = study.burn_in.value_or(0);
        std::vector<double> eta(burn_in + study.n);
        for (auto& e : eta) e = spec.sample(stream);
        series = model::simulate_from_innovations(study.params, eta, numerics::sl_encode(*sim_y0));
        series.obs.erase(series.obs.begin(), series.obs.begin() + static_cast<std::ptrdiff_t>(burn_in));
      } else {
        series = model::simulate(study.params, spec, study.n, harness::effective_burn_in(study), stream);
      }
      std::ostringstream text;
      harness::write_series(text, series);
      write_output(text.str(), sim_out);
    } else if (*fit) {
      harness::AnalysisOptions opts{fit_B, study.seed, study.threads, fit_level, study.optimizer};
      const auto report = harness::cmd_fit(fit_csv, opts);
      if (fit_as_csv) {
        std::cout << inference::csv_header(report.test) << '\n'
                  << inference::to_csv_row(report.test) << '\n';
      } else {
        std::cout << harness::format_fit_report(report);
      }
    } else if (*test) {
      if (!(t_level > 0.0 && t_level < 1.0)) throw Error(ErrorKind::Config, "level must lie in (0, 1)");
      const auto report = inference::test_stationarity(t_gamma, t_se, t_n, t_level);
      if (t_as_csv) {
        std::cout << inference::csv_header(report) << '\n' << inference::to_csv_row(report) << '\n';
      } else {
        std::cout << inference::to_key_value(report);
      }
    } else if (*region) {
      auto grid = cfg.region;
      if (r_min) grid.phi_min = *r_min;
      if (r_max) grid.phi_max = *r_max;
      if (r_points) grid.points = *r_points;
      const auto kind = r_innov ? model::parse_innovation(*r_innov) : study.innovation;
      write_output(harness::region_csv(harness::cmd_region(kind, grid)), r_out);
    } else if (*t1) {
      t1_flags.apply(study);
      const auto result = harness::run_table1_study(study);
      if (!t1_reps.empty()) write_output(harness::replicates_csv(result.records), t1_reps);
      write_output(harness::table1_csv(result.rows), t1_out);
      if (result.failures > 0) {
        std::cerr << "warning: " << result.failures << " of " << study.replications
                  << " replicates failed and were excluded\n";
      }
    } else if (*pw) {
      pw_flags.apply(study);
      if (!pw_flags.innovation && config_path.empty()) study.innovation = model::InnovationKind::StdT3;
      auto power = cfg.power;
      if (pw_phis) power.phis = *pw_phis;
      std::string text;
      for (const auto& cell_cfg : harness::power_grid(study, power)) {
        const auto reports = harness::run_test_replicates(cell_cfg);
        for (const auto side : {harness::TestSide::ST, harness::TestSide::NS}) {
          if (pw_which != "both" && pw_which != harness::to_string(side)) continue;
          auto csv = harness::power_csv({harness::power_cell(cell_cfg, reports, side)}, side);
          if (!text.empty()) csv.erase(0, csv.find('\n') + 1);  // header once
          text += csv;
        }
      }
      write_output(text, pw_out);
    } else if (*ae) {
      ae_flags.apply(study);
      write_output(harness::aae_csv(harness::run_aae_study(study)), ae_out);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
