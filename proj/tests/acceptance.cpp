// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Usage: dar_acceptance [threads]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dar/error.hpp"
#include "dar/harness/study.hpp"
#include "dar/inference/inference.hpp"
#include "dar/lyapunov/gamma.hpp"

using namespace dar;
using model::DarParams;
using model::InnovationKind;
using model::InnovationSpec;

namespace {

constexpr std::uint64_t kSeed = 20240517;
constexpr double kEuler = 0.57721566490153286061;

unsigned g_threads = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    detail << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
    pass = pass && ok;
  }
};

std::string fmt(const char* f, auto... v) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* law_name(InnovationKind k) {
  switch (k) {
    case InnovationKind::NormalPiHalf: return "normal";
    case InnovationKind::Laplace: return "laplace";
    default: return "st3";
  }
}

// ------------------------------------------------------------------ 1

void lyapunov_quadrature(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    InnovationKind kind;
    DarParams p;
    double gamma;
  };
  const Row rows[] = {
      {InnovationKind::NormalPiHalf, {0.7, 0.4, 0.5}, -0.523}, {InnovationKind::Laplace, {0.7, 0.4, 0.5}, -0.440},
      {InnovationKind::StdT3, {0.7, 0.4, 0.5}, -0.473},        {InnovationKind::NormalPiHalf, {1.0, 3.0, 0.5}, 0.242},
      {InnovationKind::Laplace, {1.0, 3.0, 0.5}, 0.227},       {InnovationKind::StdT3, {1.0, 3.0, 0.5}, 0.183},
  };
  for (const auto& r : rows) {
    const double g = lyapunov::true_gamma(r.p, InnovationSpec(r.kind));
    out.check(std::fabs(g - r.gamma) <= 0.001,
              fmt("%-7s (%.1f, %.1f): %.5f vs %.3f", law_name(r.kind), r.p.phi, r.p.alpha, g, r.gamma));
  }
  const double null = lyapunov::true_gamma({0.922, 1.844, 0.5}, InnovationSpec(InnovationKind::StdT3));
  out.check(std::fabs(null) <= 0.002, fmt("st3 null point (0.922, 1.844): %.5f vs 0", null));
  const double secs = seconds_since(t0);
  out.check(secs < 1.0, fmt("runtime %.3f s < 1 s", secs));
}

// ------------------------------------------------------------------ 2

void closed_forms(Outcome& out) {
  const InnovationSpec laplace(InnovationKind::Laplace);
  const InnovationSpec normal(InnovationKind::NormalPiHalf);
  double worst_l = 0.0;
  double worst_n = 0.0;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    worst_l = std::max(worst_l, std::fabs(lyapunov::true_gamma({0.0, a, 1.0}, laplace) - (0.5 * std::log(a) - kEuler)));
    worst_n = std::max(worst_n, std::fabs(lyapunov::true_gamma({0.0, a, 1.0}, normal) -
                                          (0.5 * std::log(a) + 0.5 * (std::log(std::numbers::pi / 4) - kEuler))));
  }
  out.check(worst_l <= 1e-6, fmt("laplace max error %.2e <= 1e-6", worst_l));
  out.check(worst_n <= 1e-6, fmt("normal  max error %.2e <= 1e-6", worst_n));
}

// ------------------------------------------------------------------ 3

void explosive_se(Outcome& out) {
  const DarParams p{1.0, 3.0, 0.5};
  struct Row {
    InnovationKind kind;
    double phi, alpha;          // expected closed form
    double sim_phi, sim_alpha;  // simulated SE (alpha < 0: not checked)
  };
  const Row rows[] = {{InnovationKind::NormalPiHalf, 0.136, 0.227, 0.139, 0.223},
                      {InnovationKind::Laplace, 0.087, 0.300, 0.090, 0.292},
                      {InnovationKind::StdT3, 0.107, -1.0, 0.109, -1.0}};
  for (const auto& r : rows) {
    const auto se = inference::asymptotic_se_explosive(p, InnovationSpec(r.kind), 400);
    out.check(std::fabs(se.phi - r.phi) <= 0.0005 && std::fabs(se.phi / r.sim_phi - 1) <= 0.05,
              fmt("%-7s phi   %.4f (expect %.3f; simulated %.3f, %+.1f%%)", law_name(r.kind), se.phi, r.phi,
                  r.sim_phi, 100 * (se.phi / r.sim_phi - 1)));
    if (r.alpha > 0) {
      out.check(std::fabs(se.alpha - r.alpha) <= 0.0005 && std::fabs(se.alpha / r.sim_alpha - 1) <= 0.05,
                fmt("%-7s alpha %.4f (expect %.3f; simulated %.3f, %+.1f%%)", law_name(r.kind), se.alpha,
                    r.alpha, r.sim_alpha, 100 * (se.alpha / r.sim_alpha - 1)));
    }
  }
}

// ------------------------------------------------------------------ 4

harness::StudyConfig design(DarParams p, InnovationKind kind, std::size_t n, std::size_t reps,
                            std::uint64_t seed_offset) {
  harness::StudyConfig cfg;
  cfg.params = p;
  cfg.innovation = kind;
  cfg.n = n;
  cfg.replications = reps;
  cfg.B = 200;
  cfg.seed = kSeed + seed_offset;
  cfg.threads = g_threads;
  return cfg;
}

void table1(Outcome& out) {
  struct Design {
    DarParams p;
    InnovationKind kind;
    std::vector<double> ref_se;  // simulated SE of phi, alpha, omega, gamma; omega < 0: excluded
  };
  const Design designs[] = {
      {{0.7, 0.4, 0.5}, InnovationKind::NormalPiHalf, {0.072, 0.056, 0.068, 0.074}},
      {{1.0, 3.0, 0.5}, InnovationKind::NormalPiHalf, {0.139, 0.223, -1.0, 0.045}},
      {{1.0, 3.0, 0.5}, InnovationKind::Laplace, {0.090, 0.292, -1.0, 0.049}},
      {{1.0, 3.0, 0.5}, InnovationKind::StdT3, {0.109, 0.375, -1.0, 0.054}},
  };
  std::uint64_t offset = 100;
  for (const auto& d : designs) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto study = harness::run_table1_study(design(d.p, d.kind, 400, 300, offset++));
    out.detail << fmt("    %s (%.1f, %.1f, %.1f): %zu failures, %.0f s\n", law_name(d.kind), d.p.phi,
                      d.p.alpha, d.p.omega, study.failures, seconds_since(t0));
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& row = study.rows[i];
      const double s = d.ref_se[i];
      if (s < 0) {
        out.detail << fmt("         %-5s bias %+.4f se %.4f see %.4f cp %.3f (excluded)\n", row.parameter.c_str(),
                          row.bias, row.se, row.see, row.cp);
        continue;
      }
      const double k = s / 0.072;
      const bool ok = std::fabs(row.bias) <= 0.02 * k && row.se >= 0.05 * k && row.se <= 0.10 * k &&
                      std::fabs(row.see / row.se - 1.0) <= 0.35 && row.cp >= 0.90 && row.cp <= 0.98;
      out.check(ok, fmt("%-5s bias %+.4f (|.|<=%.4f) se %.4f [%.4f, %.4f] see/se %.3f cp %.3f",
                        row.parameter.c_str(), row.bias, 0.02 * k, row.se, 0.05 * k, 0.10 * k,
                        row.see / row.se, row.cp));
    }
  }
}

// ------------------------------------------------------------------ 5

void power(Outcome& out) {
  struct Cell {
    double phi;
    std::function<bool(double)> st_ok;
    std::string st_band;
    std::function<bool(double)> ns_ok;
    std::string ns_band;
  };
  const Cell cells[] = {
      {0.6, [](double r) { return r <= 0.01; }, "<= 0.01", [](double r) { return r >= 0.97; }, ">= 0.97"},
      {0.922, [](double r) { return r >= 0.02 && r <= 0.11; }, "in [0.02, 0.11]",
       [](double r) { return r >= 0.02 && r <= 0.10; }, "in [0.02, 0.10]"},
      {1.3, [](double r) { return r >= 0.98; }, ">= 0.98", [](double r) { return r <= 0.02; }, "<= 0.02"},
  };
  std::uint64_t offset = 200;
  for (const auto& c : cells) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = design({c.phi, 2.0 * c.phi, 0.5}, InnovationKind::StdT3, 400, 300, offset++);
    const auto reports = harness::run_test_replicates(cfg);
    const auto st = harness::power_cell(cfg, reports, harness::TestSide::ST);
    const auto ns = harness::power_cell(cfg, reports, harness::TestSide::NS);
    out.detail << fmt("    phi0 = %.3f: %zu failures, %.0f s\n", c.phi, st.failures, seconds_since(t0));
    out.check(c.st_ok(st.rejection_rate),
              fmt("ST rejection %.4f (%zu/%zu) %s", st.rejection_rate, st.rejections, st.replications, c.st_band.c_str()));
    out.check(c.ns_ok(ns.rejection_rate),
              fmt("NS rejection %.4f (%zu/%zu) %s", ns.rejection_rate, ns.rejections, ns.replications, c.ns_band.c_str()));
  }
}

// ------------------------------------------------------------------ 6

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void aae_ordering(Outcome& out) {
  std::uint64_t offset = 300;
  for (const DarParams p : {DarParams{0.7, 0.4, 0.5}, DarParams{1.0, 3.0, 0.5}}) {
    for (auto kind : {InnovationKind::NormalPiHalf, InnovationKind::Laplace, InnovationKind::StdT3}) {
      const auto recs = harness::run_aae_study(design(p, kind, 200, 200, offset++));
      std::vector<double> g;
      std::vector<double> q;
      for (const auto& r : recs) {
        if (!r.ok) continue;
        g.push_back(r.aae_glade);
        q.push_back(r.aae_qmle);
      }
      const double mg = median(g);
      const double mq = median(q);
      const bool normal = kind == InnovationKind::NormalPiHalf;
      out.check(normal ? mq <= mg : mg < mq,
                fmt("%-7s (%.1f, %.1f): median AAE glade %.4f qmle %.4f (%zu ok), expect %s", law_name(kind),
                    p.phi, p.alpha, mg, mq, g.size(), normal ? "qmle <= glade" : "glade < qmle"));
    }
  }
}

// ------------------------------------------------------------------ 7

model::SignedLogSeries sim(const DarParams& p, InnovationKind kind, std::size_t n, std::size_t burn,
                           std::uint64_t idx) {
  numerics::RngStream stream(kSeed + 400, idx);
  return model::simulate(p, InnovationSpec(kind), n, burn, stream);
}

void properties(Outcome& out) {
  const estimation::OptimizerSettings opts;
  const DarParams stat{0.7, 0.4, 0.5};
  const DarParams expl{1.0, 3.0, 0.5};

  {  // sign flip
    bool ok = true;
    for (std::uint64_t k = 0; k < 10; ++k) {
      const auto s = sim(k % 2 ? stat : expl, InnovationKind::StdT3, 400, k % 2 ? 500 : 0, k);
      const auto a = estimation::glade(s, estimation::ThetaBox::default_for(s), opts);
      const auto b = estimation::glade(s.negated(), estimation::ThetaBox::default_for(s.negated()), opts);
      ok = ok && a.theta_hat == b.theta_hat && a.objective_value == b.objective_value;
    }
    out.check(ok, "sign-flip invariance of glade (10 series, exact)");
  }
  {  // scale equivariance
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 6; ++k) {
      const auto s = sim(stat, InnovationKind::Laplace, 400, 500, 20 + k);
      const auto box = estimation::ThetaBox::default_for(s);
      const auto base = estimation::glade(s, box, opts).theta_hat;
      for (double c : {0.1, 10.0}) {
        const auto th = estimation::glade(s.scaled(c), box.rescaled(c), opts).theta_hat;
        worst = std::max({worst, std::fabs(th.phi - base.phi), std::fabs(th.alpha / base.alpha - 1.0),
                          std::fabs(th.omega / (c * c * base.omega) - 1.0)});
      }
    }
    out.check(worst <= 10 * opts.xtol, fmt("scale equivariance (phi, alpha, c^2 omega), c in {0.1, 10}: max dev %.2e <= %.0e",
                                           worst, 10 * opts.xtol));
  }
  {  // unit weights
    const auto s = sim(stat, InnovationKind::NormalPiHalf, 400, 500, 40);
    const auto box = estimation::ThetaBox::default_for(s);
    const auto fit = estimation::glade(s, box, opts);
    const auto w = estimation::weighted_glade(s, box, estimation::WeightVector::ones(s.n()), opts);
    out.check(w.theta_hat == fit.theta_hat && w.objective_value == fit.objective_value,
              "weighted_glade with unit weights equals glade exactly");
    inference::ResampleOptions ro;
    ro.B = 50;
    ro.optimizer = opts;
    ro.warm_start = false;
    ro.weight_law = [](std::size_t n, numerics::RngStream&) { return estimation::WeightVector::ones(n); };
    const auto rs = inference::rw_variance(s, fit, box, lyapunov::TruncationWindow::for_sample_size(s.n()), ro);
    out.check(rs.se_phi == 0 && rs.se_alpha == 0 && rs.se_omega == 0 && rs.se_gamma == 0,
              "unit-weight resampling gives zero SEs");
  }
  {  // natural = truncated
    bool ok = true;
    std::size_t cases = 0;
    for (std::uint64_t k = 0; k < 10; ++k) {
      numerics::RngStream stream(kSeed + 401, k);
      const auto rec = model::simulate_with_innovations(stat, InnovationSpec(InnovationKind::Laplace), 400, 500, stream);
      const auto g = lyapunov::gamma_truncated(stat.phi, stat.alpha, rec.innovations,
                                               lyapunov::TruncationWindow::for_sample_size(400));
      if (g.truncated_count != 0) continue;
      ++cases;
      ok = ok && g.gamma_hat == lyapunov::gamma_natural(stat.phi, stat.alpha, rec.innovations);
    }
    out.check(ok && cases > 0, fmt("gamma_natural == gamma_truncated when all terms lie in I_n (%zu cases, exact)", cases));
  }
  {  // determinism across threads
    auto cfg = design(stat, InnovationKind::StdT3, 200, 16, 500);
    cfg.B = 60;
    cfg.threads = 1;
    const auto a = harness::run_table1_study(cfg);
    cfg.threads = 8;
    const auto b = harness::run_table1_study(cfg);
    auto pcfg = design({1.3, 2.6, 0.5}, InnovationKind::StdT3, 200, 8, 501);
    pcfg.B = 60;
    pcfg.threads = 1;
    const auto pa = harness::power_csv({harness::power_cell(pcfg, harness::run_test_replicates(pcfg), harness::TestSide::ST)},
                                       harness::TestSide::ST);
    pcfg.threads = 8;
    const auto pb = harness::power_csv({harness::power_cell(pcfg, harness::run_test_replicates(pcfg), harness::TestSide::ST)},
                                       harness::TestSide::ST);
    out.check(harness::replicates_csv(a.records) == harness::replicates_csv(b.records) &&
                  harness::table1_csv(a.rows) == harness::table1_csv(b.rows) && pa == pb,
              "study CSVs byte-identical for threads 1 and 8");
  }
  {  // explosive paths
    bool ok = true;
    double max_log = 0.0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      try {
        const auto s = sim({1.3, 2.6, 0.5}, InnovationKind::StdT3, 800, 0, 60 + k);
        max_log = std::max(max_log, s.obs.back().logmag());
        const auto fit = estimation::glade(s, estimation::ThetaBox::default_for(s), opts);
        const auto eta = model::residuals(s, fit.theta_hat);
        const auto g = lyapunov::gamma_truncated(fit.theta_hat.phi, fit.theta_hat.alpha, eta,
                                                 lyapunov::TruncationWindow::for_sample_size(800));
        ok = ok && std::isfinite(fit.objective_value) && std::isfinite(g.gamma_hat);
      } catch (const Error& e) {
        out.detail << "    error: " << e.what() << '\n';
        ok = false;
      }
    }
    out.check(ok, fmt("explosive paths n = 800, phi0 = 1.3 simulate and fit without overflow (max log|y_n| = %.0f)", max_log));
  }
}

// ------------------------------------------------------------------ 8

void fit_verdict(Outcome& out) {
  // Path regenerated from the fitted LIBOR model with st3 noise, started at y_1 = 6 (percent).
  const DarParams p{0.994, 0.0086, 1.5454e-5};
  const InnovationSpec spec(InnovationKind::StdT3);
  numerics::RngStream stream(kSeed, 0);
  std::vector<double> eta(368);
  for (auto& e : eta) e = spec.sample(stream);
  const auto series = model::simulate_from_innovations(p, eta, numerics::sl_encode(6.0));
  const auto report = harness::analyse_series(series, {1000, kSeed, g_threads, 0.05, {}});
  out.detail << fmt("    n = %zu obs, gamma_hat %.4f se %.4f T_n %.3f p_ns %.2e\n", series.obs.size(),
                    report.test.gamma_hat, report.test.se_gamma, report.test.t_stat, report.test.p_ns);
  out.check(report.test.ns_reject && !report.test.st_reject && report.test.t_stat < -1.645,
            "ns_reject at 5% (T_n < -1.645), st_reject false");
}

}  // namespace

int main(int argc, char** argv) {
  g_threads = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1]))
                       : std::max(1u, std::thread::hardware_concurrency());
  struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "Lyapunov quadrature reproduces tabulated exponents", lyapunov_quadrature},
      {2, "closed-form oracles at phi = 0", closed_forms},
      {3, "explosive closed-form SEs", explosive_se},
      {4, "bias / SE / SEE / CP study at n = 400", table1},
      {5, "rejection frequencies of the ST and NS tests", power},
      {6, "AAE ordering GLADE vs QMLE", aae_ordering},
      {7, "property suites", properties},
      {8, "fit verdict on a regenerated path", fit_verdict},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] criterion %d: %s (%.1f s)\n%s", out.pass ? "PASS" : "FAIL", c.id, c.name,
                seconds_since(t0), out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
