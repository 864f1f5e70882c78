#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "dar/error.hpp"
#include "dar/model/innovation.hpp"
#include "dar/numerics/parallel.hpp"
#include "dar/numerics/quadrature.hpp"
#include "dar/numerics/rng.hpp"
#include "dar/numerics/signed_log.hpp"
#include "support.hpp"

using namespace dar;
using numerics::SignedLog;
using numerics::sl_decode;
using numerics::sl_encode;

TEST_CASE("sl_encode on simple values") {
  const auto one = sl_encode(1.0);
  CHECK(one.sign() == 1);
  CHECK(one.logmag() == 0.0);

  const auto zero = sl_encode(0.0);
  CHECK(zero.sign() == 0);
  CHECK(zero.is_zero());
  CHECK(zero.logmag() == -std::numeric_limits<double>::infinity());

  const auto v = sl_encode(-std::exp(2.0));
  CHECK(v.sign() == -1);
  CHECK(v.logmag() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sl_decode on simple values") {
  CHECK(sl_decode(SignedLog::from_log(1, 0.0)) == 1.0);
  CHECK(sl_decode(SignedLog::from_log(0, -std::numeric_limits<double>::infinity())) == 0.0);
  CHECK(sl_decode(SignedLog{}) == 0.0);
  try {
    (void)sl_decode(SignedLog::from_log(1, 800.0));
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("encode/decode round trip is exact on finite reals") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-1070, 1020);
  for (int i = 0; i < 100000; ++i) {
    const double x = std::ldexp(mant(gen), expo(gen));
    REQUIRE(sl_decode(sl_encode(x)) == x);
  }
  for (double x : {std::numeric_limits<double>::max(), -std::numeric_limits<double>::max(),
                   std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::min(),
                   -0.0}) {
    CHECK(sl_decode(sl_encode(x)) == x);
  }
}

TEST_CASE("sign zero iff logmag is -inf") {
  for (double x : {0.0, -0.0, 1e-300, -2.5, 1e300}) {
    const auto v = sl_encode(x);
    CHECK((v.sign() == 0) == (v.logmag() == -std::numeric_limits<double>::infinity()));
  }
}

TEST_CASE("from_log then decode recovers the value") {
  for (double l : {-700.0, -3.0, 0.5, 10.0, 700.0}) {
    for (int s : {-1, 1}) {
      const double back = sl_decode(SignedLog::from_log(s, l));
      CHECK(back == doctest::Approx(s * std::exp(l)).epsilon(1e-13));
    }
  }
  // decode(encode) of a representable SignedLog
  const auto big = SignedLog::from_log(-1, 1e6);
  CHECK(big.logmag() == doctest::Approx(1e6).epsilon(1e-15));
  CHECK(sl_encode(sl_decode(SignedLog::from_log(1, 123.25))) == SignedLog::from_log(1, 123.25));
}

TEST_CASE("SignedLog products stay exact beyond the double range") {
  auto v = sl_encode(1.5);
  for (int i = 0; i < 5000; ++i) v = v * 3.0;
  CHECK(v.sign() == 1);
  CHECK(v.logmag() == doctest::Approx(std::log(1.5) + 5000 * std::log(3.0)).epsilon(1e-12));
  CHECK((-v).sign() == -1);
  CHECK((v * 0.0).is_zero());
  CHECK_THROWS_AS((void)sl_decode(v), Error);
}

TEST_CASE("derive_stream determinism and distinctness") {
  auto a = numerics::derive_stream(42, 0);
  auto b = numerics::derive_stream(42, 0);
  auto c = numerics::derive_stream(42, 1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.engine()();
    CHECK(x == b.engine()());
    differs = differs || (x != c.engine()());
  }
  CHECK(differs);

  std::set<std::uint64_t> first;
  for (std::uint64_t k = 0; k < 1000; ++k) first.insert(numerics::derive_stream(42, k).engine()());
  CHECK(first.size() == 1000);

  auto u = numerics::derive_stream(3, 9);
  CHECK(u.root_seed() == 3);
  CHECK(u.stream_index() == 9);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("derive_seed is injective in the index") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 100000; ++k) seen.insert(numerics::derive_seed(1, k));
  CHECK(seen.size() == 100000);
}

TEST_CASE("quadrature on smooth and singular integrands") {
  const double bp[] = {0.0};
  const auto gauss = [](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); };
  CHECK(numerics::integrate_real_line(gauss, bp).value == doctest::Approx(1.0).epsilon(1e-10));
  // E log|Z| for standard normal Z = -(gamma + log 2) / 2
  const auto logk = [&](double x) { return x == 0.0 ? 0.0 : std::log(std::fabs(x)) * gauss(x); };
  CHECK(numerics::integrate_real_line(logk, bp).value ==
        doctest::Approx(-(test::kEulerGamma + std::log(2.0)) / 2).epsilon(1e-9));
  // int_0^1 log x dx = -1
  const auto lg = [](double x) { return x == 0.0 ? 0.0 : std::log(x); };
  CHECK(numerics::integrate_interval(lg, 0.0, 1.0).value == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(numerics::integrate_interval([](double) { return 2.0; }, 1.0, 4.0).value ==
        doctest::Approx(6.0));
}

TEST_CASE("quadrature exhausts its budget on a non-integrable function") {
  const auto bad = [](double x) { return 1.0 / std::fabs(x - 0.3); };
  try {
    (void)numerics::integrate_interval(bad, 0.0, 1.0, 1e-8, 50);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
  }
}

TEST_CASE("integrate_log_kernel closed forms at phi = 0") {
  const model::InnovationSpec laplace(model::InnovationKind::Laplace);
  const model::InnovationSpec normal(model::InnovationKind::NormalPiHalf);
  const auto fl = [&](double x) { return laplace.density(x); };
  const auto fn = [&](double x) { return normal.density(x); };
  CHECK(numerics::integrate_log_kernel(fl, 0.0, 1.0) ==
        doctest::Approx(-test::kEulerGamma).epsilon(1e-8));
  CHECK(numerics::integrate_log_kernel(fn, 0.0, 1.0) ==
        doctest::Approx(0.5 * (std::log(std::numbers::pi / 4) - test::kEulerGamma)).epsilon(1e-8));
  CHECK(numerics::integrate_log_kernel(fn, 0.7, 0.4) == doctest::Approx(-0.523).epsilon(0.001 / 0.523));
}

TEST_CASE("integrate_log_kernel symmetric in phi for symmetric densities") {
  for (auto kind : {model::InnovationKind::NormalPiHalf, model::InnovationKind::Laplace,
                    model::InnovationKind::StdT3}) {
    const model::InnovationSpec spec(kind);
    const auto f = [&](double x) { return spec.density(x); };
    for (double phi : {0.3, 1.0, 2.2}) {
      CHECK(numerics::integrate_log_kernel(f, phi, 1.3) ==
            doctest::Approx(numerics::integrate_log_kernel(f, -phi, 1.3)).epsilon(1e-9));
    }
  }
}

TEST_CASE("densities integrate to one and have unit first absolute moment") {
  const double bp[] = {0.0};
  for (auto kind : {model::InnovationKind::NormalPiHalf, model::InnovationKind::Laplace,
                    model::InnovationKind::StdT3}) {
    const model::InnovationSpec spec(kind);
    const auto mass = numerics::integrate_real_line([&](double x) { return spec.density(x); }, bp);
    const auto abs1 =
        numerics::integrate_real_line([&](double x) { return std::fabs(x) * spec.density(x); }, bp);
    CHECK(std::fabs(mass.value - 1.0) <= 1e-8);
    CHECK(std::fabs(abs1.value - 1.0) <= 1e-8);
  }
}

TEST_CASE("integrate_log_kernel agrees with a Monte Carlo oracle") {
  // 10^7 draws per law shared across the (phi, alpha) grid; 3 standard errors.
  constexpr std::size_t kDraws = 10'000'000;
  for (auto kind : {model::InnovationKind::NormalPiHalf, model::InnovationKind::Laplace,
                    model::InnovationKind::StdT3}) {
    const model::InnovationSpec spec(kind);
    numerics::RngStream stream(2024, static_cast<std::uint64_t>(kind));
    std::vector<double> eta(kDraws);
    for (auto& e : eta) e = spec.sample(stream);
    for (double phi : {0.0, 0.5, 1.0}) {
      for (double alpha : {0.4, 1.8, 3.0}) {
        const double root = std::sqrt(alpha);
        double sum = 0.0;
        double sum2 = 0.0;
        for (double e : eta) {
          const double v = std::log(std::fabs(phi + e * root));
          sum += v;
          sum2 += v * v;
        }
        const double mean = sum / kDraws;
        const double se = std::sqrt((sum2 / kDraws - mean * mean) / kDraws);
        const double quad =
            numerics::integrate_log_kernel([&](double x) { return spec.density(x); }, phi, alpha);
        INFO(spec.name(), " phi=", phi, " alpha=", alpha, " mc=", mean, " quad=", quad);
        CHECK(std::fabs(quad - mean) <= 3.0 * se);
      }
    }
  }
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
  for (unsigned threads : {1u, 3u, 8u}) {
    std::vector<int> hits(1000, 0);
    numerics::parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) REQUIRE(h == 1);

    try {
      numerics::parallel_for(100, threads, [](std::size_t i) {
        if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "17");
    }
  }
}
