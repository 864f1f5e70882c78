#include "dar/harness/study.hpp"

#include <cmath>
#include <sstream>

#include "dar/error.hpp"
#include "dar/format.hpp"
#include "dar/harness/csv.hpp"
#include "dar/numerics/parallel.hpp"

namespace dar::harness {

namespace {

std::uint64_t resample_seed(std::uint64_t root, std::size_t r) {
  return numerics::derive_seed(~root, r);
}

model::SignedLogSeries simulate_replicate(const StudyConfig& cfg, const model::InnovationSpec& spec,
                                          std::size_t burn_in, std::size_t r) {
  auto stream = numerics::derive_stream(cfg.seed, r);
  return model::simulate(cfg.params, spec, cfg.n, burn_in, stream);
}

AnalysisOptions replicate_options(const StudyConfig& cfg, std::size_t r) {
  return {cfg.B, resample_seed(cfg.seed, r), 1, cfg.level, cfg.optimizer};
}

}  // namespace

FitReport analyse_series(const model::SignedLogSeries& series, const AnalysisOptions& options) {
  const auto box = estimation::ThetaBox::default_for(series);
  FitReport report;
  report.fit = estimation::glade(series, box, options.optimizer);
  const auto window = lyapunov::TruncationWindow::for_sample_size(series.n());
  const auto res = model::residuals(series, report.fit.theta_hat);
  report.gamma = lyapunov::gamma_truncated(report.fit.theta_hat.phi, report.fit.theta_hat.alpha, res,
                                           window);
  inference::ResampleOptions ro;
  ro.B = options.B;
  ro.seed = options.seed;
  ro.threads = options.threads;
  ro.optimizer = options.optimizer;
  report.rw = inference::rw_variance(series, report.fit, box, window, ro);
  report.test = inference::test_stationarity(report.gamma.gamma_hat, report.rw.se_gamma, series.n(),
                                             options.level);
  report.omega_se_reliable = report.test.ns_reject;
  return report;
}

FitReport cmd_fit(const std::string& csv_path, const AnalysisOptions& options) {
  const auto series = read_series_file(csv_path);
  if (series.n() < 10) {
    throw Error(ErrorKind::Precondition,
                csv_path + ": need at least 11 observations, got " + std::to_string(series.obs.size()));
  }
  return analyse_series(series, options);
}

std::string format_fit_report(const FitReport& r) {
  std::ostringstream out;
  const auto& th = r.fit.theta_hat;
  out << "phi_hat = " << format_real(th.phi) << '\n'
      << "se_phi = " << format_real(r.rw.se_phi) << '\n'
      << "alpha_hat = " << format_real(th.alpha) << '\n'
      << "se_alpha = " << format_real(r.rw.se_alpha) << '\n'
      << "omega_hat = " << format_real(th.omega) << '\n'
      << "se_omega = " << format_real(r.rw.se_omega) << '\n'
      << "omega_se_reliable = " << (r.omega_se_reliable ? "true" : "false") << '\n'
      << "at_boundary = " << (r.fit.at_boundary ? "true" : "false") << '\n'
      << "truncated_terms = " << r.gamma.truncated_count << '\n'
      << "resamples_used = " << r.rw.replicates.size() << '\n'
      << inference::to_key_value(r.test);
  return out.str();
}

// ---------------------------------------------------------------- coverage study

std::vector<ReplicateRecord> run_table1_replicates(const StudyConfig& cfg) {
  cfg.validate();
  const model::InnovationSpec spec(cfg.innovation);
  const std::size_t burn_in = effective_burn_in(cfg);
  std::vector<ReplicateRecord> records(cfg.replications);
  numerics::parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    auto& rec = records[r];
    rec.index = r;
    try {
      const auto series = simulate_replicate(cfg, spec, burn_in, r);
      const auto report = analyse_series(series, replicate_options(cfg, r));
      rec.estimate = report.fit.theta_hat;
      rec.gamma_hat = report.gamma.gamma_hat;
      rec.se_phi = report.rw.se_phi;
      rec.se_alpha = report.rw.se_alpha;
      rec.se_omega = report.rw.se_omega;
      rec.se_gamma = report.rw.se_gamma;
      rec.ok = true;
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });
  return records;
}

std::vector<Table1Row> aggregate_table1(const std::vector<ReplicateRecord>& records,
                                        const model::DarParams& truth, double true_gamma,
                                        double level) {
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::Config, "level must lie in (0, 1)");
  std::vector<const ReplicateRecord*> ok;
  for (const auto& r : records) {
    if (r.ok) ok.push_back(&r);
  }
  if (ok.size() < 2) {
    throw Error(ErrorKind::Config, "coverage aggregation needs at least two successful replicates");
  }
  const double z = inference::normal_quantile(1.0 - level / 2.0);
  const double m = static_cast<double>(ok.size());
  const auto row = [&](std::string name, double truth_value, auto estimate, auto se) {
    double mean = 0.0;
    double see = 0.0;
    std::size_t covered = 0;
    for (const auto* r : ok) {
      const double est = estimate(*r);
      mean += est;
      see += se(*r);
      if (std::fabs(est - truth_value) <= z * se(*r)) ++covered;
    }
    mean /= m;
    double ss = 0.0;
    for (const auto* r : ok) ss += (estimate(*r) - mean) * (estimate(*r) - mean);
    return Table1Row{std::move(name), truth_value, mean - truth_value, std::sqrt(ss / (m - 1.0)),
                     see / m, static_cast<double>(covered) / m};
  };
  return {
      row("phi", truth.phi, [](const auto& r) { return r.estimate.phi; },
          [](const auto& r) { return r.se_phi; }),
      row("alpha", truth.alpha, [](const auto& r) { return r.estimate.alpha; },
          [](const auto& r) { return r.se_alpha; }),
      row("omega", truth.omega, [](const auto& r) { return r.estimate.omega; },
          [](const auto& r) { return r.se_omega; }),
      row("gamma", true_gamma, [](const auto& r) { return r.gamma_hat; },
          [](const auto& r) { return r.se_gamma; }),
  };
}

Table1Study run_table1_study(const StudyConfig& cfg) {
  cfg.validate();
  if (cfg.replications < 2) {
    throw Error(ErrorKind::Config, "coverage study needs replications >= 2 (SE has divisor m - 1)");
  }
  Table1Study study;
  study.true_gamma = lyapunov::true_gamma(cfg.params, model::InnovationSpec(cfg.innovation));
  study.records = run_table1_replicates(cfg);
  for (const auto& r : study.records) {
    if (!r.ok) ++study.failures;
  }
  study.rows = aggregate_table1(study.records, cfg.params, study.true_gamma, cfg.level);
  return study;
}

// ---------------------------------------------------------------- power

std::vector<std::optional<inference::TestReport>> run_test_replicates(const StudyConfig& cfg) {
  cfg.validate();
  const model::InnovationSpec spec(cfg.innovation);
  const std::size_t burn_in = effective_burn_in(cfg);
  std::vector<std::optional<inference::TestReport>> reports(cfg.replications);
  numerics::parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    try {
      const auto series = simulate_replicate(cfg, spec, burn_in, r);
      reports[r] = analyse_series(series, replicate_options(cfg, r)).test;
    } catch (const Error&) {
    }
  });
  return reports;
}

PowerCell power_cell(const StudyConfig& cfg,
                     const std::vector<std::optional<inference::TestReport>>& reports,
                     TestSide which) {
  PowerCell cell;
  cell.phi0 = cfg.params.phi;
  cell.n = cfg.n;
  cell.replications = reports.size();
  for (const auto& r : reports) {
    if (!r) {
      ++cell.failures;
      continue;
    }
    if (which == TestSide::ST ? r->st_reject : r->ns_reject) ++cell.rejections;
  }
  cell.rejection_rate = cell.replications == 0
                            ? 0.0
                            : static_cast<double>(cell.rejections) /
                                  static_cast<double>(cell.replications);
  return cell;
}

std::vector<PowerCell> run_power_study(const std::vector<StudyConfig>& grid, TestSide which) {
  std::vector<PowerCell> cells;
  cells.reserve(grid.size());
  for (const auto& cfg : grid) cells.push_back(power_cell(cfg, run_test_replicates(cfg), which));
  return cells;
}

std::vector<StudyConfig> power_grid(const StudyConfig& base, const PowerConfig& power) {
  std::vector<StudyConfig> grid;
  for (const double phi : power.phis) {
    StudyConfig cfg = base;
    cfg.params = {phi, power.alpha_ratio * phi, power.omega};
    grid.push_back(cfg);
  }
  return grid;
}

// ---------------------------------------------------------------- AAE

std::vector<AaeRecord> run_aae_study(const StudyConfig& cfg) {
  cfg.validate();
  const model::InnovationSpec spec(cfg.innovation);
  const std::size_t burn_in = effective_burn_in(cfg);
  const double kappa = spec.kappa();
  const model::DarParams qmle_target{cfg.params.phi, kappa * cfg.params.alpha,
                                     kappa * cfg.params.omega};
  std::vector<AaeRecord> records(cfg.replications);
  numerics::parallel_for(cfg.replications, cfg.threads, [&](std::size_t r) {
    auto& rec = records[r];
    rec.index = r;
    try {
      const auto series = simulate_replicate(cfg, spec, burn_in, r);
      const auto box = estimation::ThetaBox::default_for(series);
      rec.aae_glade = estimation::aae(estimation::glade(series, box, cfg.optimizer), cfg.params);
      rec.aae_qmle = estimation::aae(estimation::qmle(series, box, cfg.optimizer), qmle_target);
      rec.ok = true;
    } catch (const Error&) {
    }
  });
  return records;
}

// ---------------------------------------------------------------- region

std::vector<RegionPoint> cmd_region(model::InnovationKind kind, const RegionConfig& grid) {
  if (grid.points < 1 || !(grid.phi_min <= grid.phi_max)) {
    throw Error(ErrorKind::Config, "region grid needs points >= 1 and phi_min <= phi_max");
  }
  const model::InnovationSpec spec(kind);
  std::vector<RegionPoint> out(grid.points);
  const double step =
      grid.points == 1 ? 0.0 : (grid.phi_max - grid.phi_min) / static_cast<double>(grid.points - 1);
  for (std::size_t i = 0; i < grid.points; ++i) {
    out[i].phi = grid.phi_min + step * static_cast<double>(i);
    try {
      out[i].alpha_boundary = lyapunov::boundary_alpha(spec, out[i].phi);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoRoot) throw;
    }
  }
  return out;
}

// ---------------------------------------------------------------- CSV output

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "parameter,true_value,bias,se,see,cp\n";
  for (const auto& r : rows) {
    out << r.parameter << ',' << format_real(r.true_value) << ',' << format_real(r.bias) << ','
        << format_real(r.se) << ',' << format_real(r.see) << ',' << format_real(r.cp) << '\n';
  }
  return out.str();
}

std::string replicates_csv(const std::vector<ReplicateRecord>& records) {
  std::ostringstream out;
  out << "replicate,ok,phi_hat,alpha_hat,omega_hat,gamma_hat,se_phi,se_alpha,se_omega,se_gamma\n";
  for (const auto& r : records) {
    out << r.index << ',' << (r.ok ? 1 : 0);
    if (r.ok) {
      for (const double v : {r.estimate.phi, r.estimate.alpha, r.estimate.omega, r.gamma_hat,
                             r.se_phi, r.se_alpha, r.se_omega, r.se_gamma}) {
        out << ',' << format_real(v);
      }
    } else {
      out << ",,,,,,,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string power_csv(const std::vector<PowerCell>& cells, TestSide which) {
  std::ostringstream out;
  out << "test,phi0,n,rejections,replications,failures,rejection_rate\n";
  for (const auto& c : cells) {
    out << to_string(which) << ',' << format_real(c.phi0) << ',' << c.n << ',' << c.rejections << ','
        << c.replications << ',' << c.failures << ',' << format_real(c.rejection_rate) << '\n';
  }
  return out.str();
}

std::string aae_csv(const std::vector<AaeRecord>& records) {
  std::ostringstream out;
  out << "replicate,ok,aae_glade,aae_qmle\n";
  for (const auto& r : records) {
    out << r.index << ',' << (r.ok ? 1 : 0) << ',';
    if (r.ok) out << format_real(r.aae_glade) << ',' << format_real(r.aae_qmle);
    else out << ',';
    out << '\n';
  }
  return out.str();
}

std::string region_csv(const std::vector<RegionPoint>& points) {
  std::ostringstream out;
  out << "phi,alpha_boundary\n";
  for (const auto& p : points) {
    out << format_real(p.phi) << ',';
    if (p.alpha_boundary) out << format_real(*p.alpha_boundary);
    out << '\n';
  }
  return out.str();
}

std::string to_string(TestSide side) { return side == TestSide::ST ? "ST" : "NS"; }

}  // namespace dar::harness
