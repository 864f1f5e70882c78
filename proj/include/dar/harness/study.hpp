#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dar/estimation/glade.hpp"
#include "dar/harness/config.hpp"
#include "dar/inference/inference.hpp"
#include "dar/lyapunov/gamma.hpp"

namespace dar::harness {

struct AnalysisOptions {
  std::size_t B = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double level = 0.05;
  estimation::OptimizerSettings optimizer{};
};

/// Full single-series analysis: GLADE, truncated gamma, random-weighting SEs
/// and both one-sided tests.
struct FitReport {
  estimation::FitResult fit;
  lyapunov::GammaEstimate gamma;
  inference::ResampleSummary rw;
  inference::TestReport test;
  /// The omega SE means little unless stationarity is supported.
  bool omega_se_reliable = false;
};

[[nodiscard]] FitReport analyse_series(const model::SignedLogSeries& series,
                                       const AnalysisOptions& options);

/// Reads a CSV series and analyses it.
[[nodiscard]] FitReport cmd_fit(const std::string& csv_path, const AnalysisOptions& options);

/// key = value lines: theta-hat with SEs, then the test report fields.
[[nodiscard]] std::string format_fit_report(const FitReport& report);

// ---------------------------------------------------------------- coverage study

struct ReplicateRecord {
  std::size_t index = 0;
  bool ok = false;
  std::string error;
  model::DarParams estimate{};
  double gamma_hat = 0.0;
  double se_phi = 0.0;
  double se_alpha = 0.0;
  double se_omega = 0.0;
  double se_gamma = 0.0;
};

struct Table1Row {
  std::string parameter;
  double true_value = 0.0;
  double bias = 0.0;
  double se = 0.0;
  double see = 0.0;
  double cp = 0.0;
};

struct Table1Study {
  std::vector<Table1Row> rows;  ///< phi, alpha, omega, gamma
  std::vector<ReplicateRecord> records;
  std::size_t failures = 0;
  double true_gamma = 0.0;
};

/// One record per replicate r: path from stream r of cfg.seed, resampling
/// weights from a seed derived from (cfg.seed, r). Failed replicates are kept
/// with ok = false and their error message.
[[nodiscard]] std::vector<ReplicateRecord> run_table1_replicates(const StudyConfig& cfg);

/// Bias, SE (divisor m - 1), SEE and CP of the (1 - level) normal interval over
/// the successful records. Throws Config when fewer than two records succeeded.
[[nodiscard]] std::vector<Table1Row> aggregate_table1(const std::vector<ReplicateRecord>& records,
                                                      const model::DarParams& truth,
                                                      double true_gamma, double level);

/// Throws Config when replications < 2.
[[nodiscard]] Table1Study run_table1_study(const StudyConfig& cfg);

// ---------------------------------------------------------------- power

enum class TestSide { ST, NS };

struct PowerCell {
  double phi0 = 0.0;
  std::size_t n = 0;
  std::size_t rejections = 0;
  std::size_t replications = 0;
  std::size_t failures = 0;  ///< counted as non-rejections
  double rejection_rate = 0.0;
};

/// Per-replicate test reports for one design; failed replicates are empty.
[[nodiscard]] std::vector<std::optional<inference::TestReport>> run_test_replicates(
    const StudyConfig& cfg);

[[nodiscard]] PowerCell power_cell(const StudyConfig& cfg,
                                   const std::vector<std::optional<inference::TestReport>>& reports,
                                   TestSide which);

[[nodiscard]] std::vector<PowerCell> run_power_study(const std::vector<StudyConfig>& grid,
                                                     TestSide which);

/// Designs (phi, ratio * phi, omega) for each phi of the power grid.
[[nodiscard]] std::vector<StudyConfig> power_grid(const StudyConfig& base, const PowerConfig& power);

// ---------------------------------------------------------------- AAE

struct AaeRecord {
  std::size_t index = 0;
  bool ok = false;
  double aae_glade = 0.0;
  double aae_qmle = 0.0;
};

/// GLADE is scored against the design; the QMLE against its own target
/// (phi, kappa alpha, kappa omega), which is what it estimates when E eta^2 = kappa.
[[nodiscard]] std::vector<AaeRecord> run_aae_study(const StudyConfig& cfg);

// ---------------------------------------------------------------- region

struct RegionPoint {
  double phi = 0.0;
  std::optional<double> alpha_boundary;
};

[[nodiscard]] std::vector<RegionPoint> cmd_region(model::InnovationKind kind,
                                                  const RegionConfig& grid);

// ---------------------------------------------------------------- CSV output

[[nodiscard]] std::string table1_csv(const std::vector<Table1Row>& rows);
[[nodiscard]] std::string replicates_csv(const std::vector<ReplicateRecord>& records);
[[nodiscard]] std::string power_csv(const std::vector<PowerCell>& cells, TestSide which);
[[nodiscard]] std::string aae_csv(const std::vector<AaeRecord>& records);
[[nodiscard]] std::string region_csv(const std::vector<RegionPoint>& points);

[[nodiscard]] std::string to_string(TestSide side);

}  // namespace dar::harness
