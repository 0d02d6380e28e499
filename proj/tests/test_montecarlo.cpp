#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "fracwos/estimate.hpp"
#include "fracwos/montecarlo.hpp"
#include "fracwos/reference.hpp"
#include "fracwos/rng.hpp"
#include "oracles.hpp"

using namespace fracwos;

namespace {

ProblemSpec disc_problem(double alpha, ExteriorData g) {
  const StableParams params(alpha, 2);
  return ProblemSpec{.domain = Domain::ball(Point{0.0, 0.0}, 1.0),
                     .params = params,
                     .g = std::move(g),
                     .f = std::nullopt,
                     .eval_points = {Point{0.6, 0.6}},
                     .tol = std::nullopt,
                     .n_samples = 1,
                     .seed = 0,
                     .eps_skin = 0.0,
                     .n_inner = 1000,
                     .step_cap = 1'000'000};
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_estimate(const Estimate& a, const Estimate& b) {
  return a.n() == b.n() && same_bits(a.mean(), b.mean()) && same_bits(a.var(), b.var());
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("Estimate matches a two-pass computation and merges exactly") {
    std::vector<double> xs;
    RngStream rng(1, 0);
    for (int i = 0; i < 1000; ++i) xs.push_back(1e6 + rng.normal());
    Estimate all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      all.add(xs[i]);
      (i < 337 ? left : right).add(xs[i]);
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    CHECK(all.mean() == doctest::Approx(mean).epsilon(1e-14));
    CHECK(all.var() == doctest::Approx(ss / (xs.size() - 1)).epsilon(1e-9));
    const Estimate m = Estimate::merged(left, right);
    CHECK(m.n() == 1000);
    CHECK(m.mean() == doctest::Approx(all.mean()).epsilon(1e-14));
    CHECK(m.var() == doctest::Approx(all.var()).epsilon(1e-9));
    CHECK(Estimate().std_error() == 0.0);
    const Estimate f = Estimate::from_moments(10, 2.0, 4.0);
    CHECK(f.std_error() == doctest::Approx(std::sqrt(0.4)).epsilon(1e-15));
  }

  TEST_CASE("constant data: mean one, variance zero") {
    const auto problem = disc_problem(1.0, ExteriorData::constant(1.0));
    for (std::uint64_t n : {2ULL, 1000ULL, 5000ULL}) {
      const McResult r = estimate_fixed(problem, Point{0.6, 0.6}, n, 3, 2);
      CHECK(r.estimate.mean() == 1.0);
      CHECK(r.estimate.var() == 0.0);
      CHECK(r.estimate.n() == n);
      CHECK(r.stop == StopReason::FixedBudget);
    }
  }

  TEST_CASE("parallel driver equals the serial loop bit for bit") {
    const auto problem = disc_problem(0.8, ExteriorData::gaussian(Point{2.0, 0.0}));
    const Point x{0.6, 0.6};
    const McResult serial = estimate_fixed_serial(problem, x, 5000, 17);
    for (int workers : {1, 2, 3, 4}) {
      const McResult par = estimate_fixed(problem, x, 5000, 17, workers);
      CAPTURE(workers);
      // Block folding changes the summation order, so compare at rounding level.
      CHECK(par.estimate.mean() == doctest::Approx(serial.estimate.mean()).epsilon(1e-13));
      CHECK(par.estimate.var() == doctest::Approx(serial.estimate.var()).epsilon(1e-11));
      CHECK(par.estimate.n() == serial.estimate.n());
    }
  }

  TEST_CASE("results do not depend on the worker count or the run") {
    const auto problem = disc_problem(1.2, ExteriorData::green(Point{2.0, 0.0}, StableParams(1.2, 2)));
    const Point x{0.6, 0.6};
    const McResult base = estimate_fixed(problem, x, 10000, 5, 1);
    for (int workers : {1, 4, 7}) {
      CHECK(same_estimate(estimate_fixed(problem, x, 10000, 5, workers).estimate, base.estimate));
    }
    AdaptivePlan plan{.tol = 0.01, .batch = 3000, .n_min = 2000, .n_max = 1'000'000};
    const McResult a1 = estimate_adaptive(problem, x, plan, 5, 1);
    const McResult a4 = estimate_adaptive(problem, x, plan, 5, 4);
    CHECK(same_estimate(a1.estimate, a4.estimate));
    CHECK(a1.attempted == a4.attempted);
    CHECK_FALSE(same_estimate(estimate_fixed(problem, x, 10000, 6, 1).estimate, base.estimate));
  }

  TEST_CASE("adaptive sampling") {
    SUBCASE("constant data stops at n_min with zero error") {
      const auto problem = disc_problem(1.0, ExteriorData::constant(3.0));
      const McResult r = estimate_adaptive(problem, Point{0.6, 0.6}, {1e-6, 500, 1234, 100000}, 1, 1);
      CHECK(r.estimate.n() == 1234);
      CHECK(r.estimate.std_error() == 0.0);
      CHECK(r.stop == StopReason::Tolerance);
    }
    SUBCASE("stops once the standard error is below tol") {
      const auto problem = disc_problem(1.5, ExteriorData::gaussian(Point{2.0, 0.0}));
      const McResult r = estimate_adaptive(problem, Point{0.6, 0.6}, {2e-3, 1000, 1000, 1'000'000}, 2, 1);
      CHECK(r.stop == StopReason::Tolerance);
      CHECK(r.estimate.std_error() < 2e-3);
      CHECK((r.estimate.n() - 1000) % 1000 == 0);
    }
    SUBCASE("n_max reached: partial result is carried by the error") {
      const auto problem = disc_problem(1.5, ExteriorData::gaussian(Point{2.0, 0.0}));
      try {
        estimate_adaptive(problem, Point{0.6, 0.6}, {1e-6, 1000, 1000, 3000}, 2, 1);
        FAIL("expected SamplingToleranceNotReached");
      } catch (const SamplingToleranceNotReached& e) {
        CHECK(e.partial().estimate.n() == 3000);
        CHECK(e.partial().stop == StopReason::MaxSamples);
        CHECK(e.partial().estimate.std_error() > 1e-6);
      }
    }
  }

  TEST_CASE("step cap aborts are counted, not averaged") {
    auto problem = disc_problem(1.0, ExteriorData::constant(1.0));
    problem.domain = Domain::swiss_cheese();
    problem.step_cap = 2;
    const McResult r = estimate_fixed(problem, Point{0.0, 0.0}, 2000, 1, 1);
    CHECK(r.aborted > 0);
    CHECK(r.attempted == 2000);
    CHECK(r.estimate.n() + r.aborted == 2000);
    CHECK(r.estimate.mean() == 1.0);
  }

  TEST_CASE("step histogram invariants") {
    const StableParams params(1.0, 2);
    const Domain ball = Domain::ball(Point{0.0, 0.0}, 1.0);
    const StepHistogram centre = step_statistics(ball, params, Point{0.0, 0.0}, 1000, 0.0, 1, 2);
    CHECK(centre.counts.size() == 1);
    CHECK(centre.counts.at(1) == 1000);
    CHECK(centre.mean_steps == 1.0);
    CHECK(centre.mean_se() == 0.0);

    const StepHistogram h = step_statistics(Domain::swiss_cheese(), params, Point{0.3, -0.2}, 5000, 0.0, 2, 3);
    std::uint64_t total = 0;
    for (const auto& [n, c] : h.counts) total += c;
    CHECK(total == h.runs);
    CHECK(h.tail(0) == 1.0);
    for (std::uint64_t n = 0; n <= h.max_steps(); ++n) REQUIRE(h.tail(n + 1) <= h.tail(n));
    CHECK(h.tail(h.max_steps()) == 0.0);
    CHECK(h.tail_count(0) == h.runs);
    CHECK(h.tail_se(0) == 0.0);
    const StepHistogram again = step_statistics(Domain::swiss_cheese(), params, Point{0.3, -0.2}, 5000, 0.0, 2, 1);
    CHECK(again.counts == h.counts);
  }

  TEST_CASE("geometric parameter: quadrature against the Cartesian oracle and Monte Carlo") {
    CHECK_THROWS_AS(geometric_parameter(StableParams(1.0, 3), PMethod::Quadrature, 1e-10, 0), DomainError);
    for (double alpha : {0.5, 1.0, 1.5}) {
      const StableParams params(alpha, 2);
      const auto q = geometric_parameter(params, PMethod::Quadrature, 1e-10, 0);
      CAPTURE(alpha);
      CHECK(q.value > 0.0);
      CHECK(q.value < 1.0);
      CHECK(q.value == doctest::Approx(oracle::p_disc(alpha)).epsilon(1e-8));
      const auto mc = geometric_parameter(params, PMethod::MonteCarlo, 1e-3, 4);
      CHECK(mc.error < 1e-3);
      CHECK(std::abs(mc.value - q.value) <= 4 * 1e-3);
    }
  }

  TEST_CASE("geometric parameter in three dimensions by Monte Carlo") {
    const auto mc = geometric_parameter(StableParams(1.0, 3), PMethod::MonteCarlo, 2e-3, 1);
    CHECK(mc.value > 0.0);
    CHECK(mc.value < oracle::p_disc(1.0));  // the slab beyond a tangent plane is thinner in angle
    CHECK(mc.error < 2e-3);
  }

  TEST_CASE("mean steps on the disc are bounded by 1/p") {
    const Domain ball = Domain::ball(Point{0.0, 0.0}, 1.0);
    for (double alpha : {0.3, 0.9, 1.5, 1.8}) {
      const StableParams params(alpha, 2);
      const double p = geometric_parameter(params, PMethod::Quadrature, 1e-10, 0).value;
      const StepHistogram h = step_statistics(ball, params, Point{std::sqrt(0.29), -std::sqrt(0.7)}, 20000, 0.0, 9);
      CAPTURE(alpha);
      CHECK(h.mean_steps <= 1.0 / p + 4 * h.mean_se());
    }
  }

  TEST_CASE("CLT calibration on the Green's function problem") {
    const double alpha = 1.5;  // square-integrable data
    const StableParams params(alpha, 2);
    const auto problem = disc_problem(alpha, ExteriorData::green(Point{2.0, 0.0}, params));
    const Point x{0.6, 0.6};
    const double truth = green_reference(x, Point{2.0, 0.0}, params);
    int covered = 0;
    for (int run = 0; run < 200; ++run) {
      const McResult r = estimate_fixed(problem, x, 10000, 1000 + run, 1);
      covered += std::abs(r.estimate.mean() - truth) <= 1.96 * r.estimate.std_error();
    }
    CHECK(covered >= 180);
    CHECK(covered <= 198);
  }
}
