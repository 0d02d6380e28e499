#include <doctest.h>

#include <cmath>
#include <limits>

#include "fracwos/errors.hpp"
#include "fracwos/problem.hpp"
#include "fracwos/reference.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/wos.hpp"
#include "oracles.hpp"

using namespace fracwos;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

WalkOptions recorded(double eps_skin = 0.0) {
  WalkOptions opt;
  opt.eps_skin = eps_skin;
  return opt;
}

ProblemSpec disc_problem(double alpha, ExteriorData g, std::optional<SourceTerm> f = std::nullopt) {
  const StableParams params(alpha, 2);
  return ProblemSpec{.domain = Domain::ball(Point{0.0, 0.0}, 1.0),
                     .params = params,
                     .g = std::move(g),
                     .f = std::move(f),
                     .eval_points = {Point{0.0, 0.0}},
                     .tol = std::nullopt,
                     .n_samples = 1,
                     .seed = 0,
                     .eps_skin = 0.0,
                     .n_inner = 1000,
                     .step_cap = 1'000'000};
}

// r^α ∫ f(r y) V_1(0, dy) for radial f, by quadrature against the oracle density.
template <class F>
double radial_occupation_integral(F f, double r, double alpha) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto g = [&](double s) {
    if (s < 1e-100) return 0.0;  // integrable s^{α-1} spike; avoids overflow
    return 2.0 * oracle::pi * s * oracle::occupation_density_disc(s, alpha) * f(r * s);
  };
  return std::pow(r, alpha) * ts.integrate(g, 0.0, 1.0);
}

}  // namespace

TEST_SUITE("wos") {
  TEST_CASE("every step jumps past its inscribed sphere") {
    const std::vector<Domain> domains{Domain::ball(Point{0.0, 0.0}, 1.0), Domain::box(Point{0.0, 0.0}, Point{2.0, 1.0}),
                                      Domain::swiss_cheese()};
    const std::vector<Point> starts{Point{0.3, 0.1}, Point{0.5, 0.5}, Point{std::sqrt(0.29), -std::sqrt(0.7)}};
    for (double alpha : {0.2, 1.0, 1.99}) {
      const StableParams params(alpha, 2);
      for (std::size_t k = 0; k < domains.size(); ++k) {
        for (int i = 0; i < 500; ++i) {
          RngStream rng(1, i);
          const WalkResult w = run_walk(domains[k], params, starts[k], std::nullopt, recorded(), rng);
          REQUIRE(w.steps == w.centers.size());
          REQUIRE(w.termination == Termination::ExactExit);
          REQUIRE_FALSE(domains[k].contains(w.exit_point));
          for (std::size_t n = 0; n < w.steps; ++n) {
            const Point& next = n + 1 < w.steps ? w.centers[n + 1] : w.exit_point;
            // Strict in exact arithmetic; the sampled radius is > 1, and the
            // jump keeps that up to a few roundings of r and of the centre.
            const double slack = 4 * kEps * (w.radii[n] + w.centers[n].norm());
            REQUIRE(distance(next, w.centers[n]) >= w.radii[n] - slack);
            REQUIRE(w.radii[n] == domains[k].inscribed_radius(w.centers[n]));
          }
        }
      }
    }
  }

  TEST_CASE("walks from the centre of a ball take one step") {
    const StableParams params(1.3, 3);
    const Domain ball = Domain::ball(Point{1.0, 2.0, 3.0}, 2.0);
    for (int i = 0; i < 1000; ++i) {
      RngStream rng(2, i);
      CHECK(run_walk(ball, params, Point{1.0, 2.0, 3.0}, std::nullopt, recorded(), rng).steps == 1);
    }
  }

  TEST_CASE("errors: outside start, step cap, source outside d = 2") {
    const StableParams params(1.0, 2);
    const Domain cheese = Domain::swiss_cheese();
    RngStream rng(3, 0);
    CHECK_THROWS_AS(run_walk(cheese, params, Point{20.0, 0.0}, std::nullopt, recorded(), rng), DomainError);
    WalkOptions capped = recorded();
    capped.step_cap = 1;
    bool thrown = false;
    for (int i = 0; i < 200 && !thrown; ++i) {
      RngStream r(3, i);
      try {
        run_walk(cheese, params, Point{0.0, 0.0}, std::nullopt, capped, r);
      } catch (const StepCapExceeded& e) {
        thrown = true;
        CHECK(e.steps() == 1);
      }
    }
    CHECK(thrown);
    const StableParams p3(1.0, 3);
    CHECK_THROWS_AS(run_walk(Domain::ball(Point{0.0, 0.0, 0.0}, 1.0), p3, Point{0.0, 0.0, 0.0},
                             SourceTerm::constant(1.0), recorded(), rng),
                    DomainError);
  }

  TEST_CASE("eps-skin stops inside the skin and pays at the nearest exterior point") {
    const StableParams params(1.0, 2);
    const Domain cheese = Domain::swiss_cheese();
    const Point x0{std::sqrt(0.29), -std::sqrt(0.7)};
    int skin = 0;
    for (int i = 0; i < 2000; ++i) {
      RngStream rng(4, i);
      const WalkResult w = run_walk(cheese, params, x0, std::nullopt, recorded(0.05), rng);
      if (w.termination == Termination::EpsSkin) {
        ++skin;
        REQUIRE(cheese.contains(w.exit_point));
        REQUIRE(cheese.inscribed_radius(w.exit_point) < 0.05);
        const auto g = ExteriorData::halfspace_indicator(Point{0.0, 1.0}, 0.0);
        const Point e = cheese.nearest_exterior(w.exit_point);
        REQUIRE(dirichlet_payoff(w, g, cheese) == g(e));
      } else {
        REQUIRE_FALSE(cheese.contains(w.exit_point));
      }
    }
    CHECK(skin > 0);
  }

  TEST_CASE("constant data pays the constant") {
    for (double alpha : {0.5, 1.5}) {
      const auto problem = disc_problem(alpha, ExteriorData::constant(2.5));
      for (int i = 0; i < 1000; ++i) {
        RngStream rng(5, i);
        REQUIRE(chi_sample(problem, Point{0.2, -0.7}, rng) == 2.5);
      }
    }
  }

  TEST_CASE("indicator beyond the tangent line has mean p(alpha, 2)") {
    for (double alpha : {0.5, 1.5}) {
      const auto problem = disc_problem(alpha, ExteriorData::halfspace_indicator(Point{1.0, 0.0}, -1.0));
      const int n = 400000;
      double hits = 0.0;
      for (int i = 0; i < n; ++i) {
        RngStream rng(6, i);
        hits += chi_sample(problem, Point{0.0, 0.0}, rng);
      }
      const double p = oracle::p_disc(alpha);
      CHECK(std::abs(hits / n - p) <= 4 * std::sqrt(p * (1 - p) / n));
    }
  }

  TEST_CASE("source increment: zero and constant sources") {
    const StableParams params(0.7, 2);
    RngStream rng(7, 0);
    CHECK(source_increment(Point{0.1, 0.1}, 0.4, SourceTerm::constant(0.0), params, 100, rng) == 0.0);
    const double inc = source_increment(Point{0.1, 0.1}, 0.4, SourceTerm::constant(1.0), params, 100, rng);
    CHECK(inc == doctest::Approx(params.a2() * std::pow(0.4, 0.7) * params.kappa()).epsilon(1e-15));
    // Cross-check: the occupation measure of B(0, r) has mass r^α E_0[σ].
    CHECK(inc == doctest::Approx(std::pow(0.4, 0.7) * oracle::mean_exit_time_disc(0.7)).epsilon(1e-10));
    CHECK(inc == doctest::Approx(radial_occupation_integral([](double) { return 1.0; }, 0.4, 0.7)).epsilon(1e-9));
    CHECK_THROWS_AS(source_increment(Point{0.0, 0.0}, 0.4, SourceTerm::constant(1.0), params, 0, rng), DomainError);
  }

  TEST_CASE("source increment: Dyda source matches the quadrature oracle") {
    const double alpha = 1.0, r = 0.5;
    const StableParams params(alpha, 2);
    const SourceTerm f = SourceTerm::dyda(alpha);
    const double expect = radial_occupation_integral([&](double s) { return f(Point{s, 0.0}); }, r, alpha);
    const int n = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      RngStream rng(8, i);
      const double v = source_increment(Point{0.0, 0.0}, r, f, params, 1, rng);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - expect) <= 4 * se);
  }

  TEST_CASE("dirichlet data: gaussian at the centre against the Bessel oracle") {
    const double alpha = 1.2;
    const auto problem = disc_problem(alpha, ExteriorData::gaussian(Point{1.5, 0.0}));
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      RngStream rng(9, i);
      const double v = chi_sample(problem, Point{0.0, 0.0}, rng);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - oracle::gaussian_disc_at_origin(alpha, 1.5)) <= 4 * se);
  }

  TEST_CASE("source without exterior data: Dyda solution at an interior point") {
    const double alpha = 1.0;
    auto problem = disc_problem(alpha, ExteriorData::constant(0.0), SourceTerm::dyda(alpha));
    problem.n_inner = 100;
    const Point x{0.3, -0.2};
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      RngStream rng(10, i);
      const double v = chi_sample(problem, x, rng);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::abs(mean - std::pow(1 - 0.13, 1.5)) <= 4 * se);
  }

  TEST_CASE("phase-space path") {
    const StableParams params(0.9, 2);
    RngStream rng(11, 0);
    const PathRecord empty = simulate_path(Point{0.5, 0.5}, params, 1e-6, 0, rng);
    CHECK(empty.points.size() == 1);
    CHECK(empty.points[0] == Point{0.5, 0.5});
    CHECK(empty.jump_flags.empty());

    const PathRecord path = simulate_path(Point{0.0, 0.0}, params, 1e-6, 1000, rng);
    CHECK(path.tolerance == 1e-6);
    REQUIRE(path.points.size() == 1001);
    REQUIRE(path.jump_flags.size() == 1000);
    for (std::size_t i = 0; i < 1000; ++i) {
      REQUIRE(path.jump_flags[i]);
      REQUIRE(distance(path.points[i + 1], path.points[i]) > 1e-6 * (1 - 4 * kEps));
    }
    CHECK_THROWS_AS(simulate_path(Point{0.0, 0.0}, params, 0.0, 10, rng), DomainError);
  }
}
