#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracwos/problem.hpp"
#include "fracwos/reference.hpp"
#include "fracwos/specfun.hpp"
#include "oracles.hpp"

using namespace fracwos;

TEST_SUITE("reference") {
  TEST_CASE("Green's function closed form") {
    const StableParams p(1.0, 2);
    CHECK(green_reference(Point{0.0, 0.0}, Point{1.0, 0.0}, p) == 1.0);
    CHECK(green_reference(Point{0.6, 0.6}, Point{2.0, 0.0}, p) == doctest::Approx(1 / std::sqrt(2.32)).epsilon(1e-15));
    const StableParams p3(0.5, 3);
    CHECK(green_reference(Point{0.0, 0.0, 0.0}, Point{0.0, 2.0, 0.0}, p3) ==
          doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-15));
  }

  TEST_CASE("Poisson kernel integrates to one") {
    for (double a : {0.3, 1.0, 1.7}) {
      const StableParams p(a, 2);
      for (const Point& x : {Point{0.0, 0.0}, Point{0.6, 0.6}, Point{-0.2, 0.9}}) {
        CAPTURE(a);
        const double mass = disc_exterior_integral(x, [](const Point&) { return 1.0; }, p, 1e-10, 1e7);
        // The truncation at rho_max drops O(rho_max^{-α}) of mass.
        CHECK(mass == doctest::Approx(1.0).epsilon(std::pow(1e7, -a) * 2 + 1e-8));
      }
    }
  }

  TEST_CASE("Poisson kernel at the centre is the exit density") {
    const StableParams p(0.9, 2);
    const Point z{1.1, -1.7};
    CHECK(disc_poisson_kernel(Point{0.0, 0.0}, z, p) == doctest::Approx(exit_density(z, p)).epsilon(1e-14));
  }

  TEST_CASE("Poisson kernel reproduces the Green's function") {
    // |z - y|^{α-2} is harmonic in the disc when y is outside, so its
    // Poisson integral returns it exactly. Below α = 1 the pole is not
    // integrable along the ring through it, so ring-by-ring quadrature
    // cannot serve as a check there.
    for (double a : {1.0, 1.5}) {
      const StableParams p(a, 2);
      const Point y{2.0, 0.0};
      auto g = [&](const Point& z) { return green_reference(z, y, p); };
      for (const Point& x : {Point{0.0, 0.0}, Point{0.6, 0.6}}) {
        CAPTURE(a);
        const double v = disc_exterior_integral(x, g, p, 1e-6, 1e6);
        CHECK(v == doctest::Approx(green_reference(x, y, p)).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("Gaussian data: value at the centre matches the Bessel oracle") {
    for (double a : {0.5, 1.0, 1.5}) {
      const StableParams p(a, 2);
      for (double y0 : {0.0, 1.5, 2.0}) {
        CAPTURE(a);
        CAPTURE(y0);
        CHECK(ball_poisson_reference(Point{0.0, 0.0}, Point{y0, 0.0}, p, 1e-10) ==
              doctest::Approx(oracle::gaussian_disc_at_origin(a, y0)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("Gaussian data: decay, symmetry and continuity in alpha") {
    const StableParams p(1.0, 2);
    const Point x{0.6, 0.6};
    const double near = ball_poisson_reference(x, Point{2.0, 0.0}, p);
    const double far = ball_poisson_reference(x, Point{8.0, 0.0}, p);
    CHECK(far < near * 1e-2);
    CHECK(ball_poisson_reference(Point{0.6, -0.6}, Point{2.0, 0.0}, p) == doctest::Approx(near).epsilon(1e-8));
    double prev = ball_poisson_reference(x, Point{2.0, 0.0}, StableParams(0.1, 2));
    for (int k = 2; k <= 19; ++k) {
      const double v = ball_poisson_reference(x, Point{2.0, 0.0}, StableParams(0.1 * k, 2));
      CHECK(std::abs(v - prev) < 0.5);
      CHECK(v > 0.0);
      prev = v;
    }
  }

  TEST_CASE("Dyda solution and source") {
    CHECK(dyda_exact(Point{0.0, 0.0}, 1.0) == 1.0);
    CHECK(dyda_exact(Point{1.0, 0.0}, 1.0) == 0.0);
    CHECK(dyda_exact(Point{3.0, 0.0}, 0.4) == 0.0);
    CHECK(dyda_exact(Point{0.6, 0.6}, 1.0) == doctest::Approx(std::pow(0.28, 1.5)).epsilon(1e-14));
    CHECK(dyda_source(Point{0.0, 0.0}, 1.0) == doctest::Approx(3 * std::numbers::pi / 4).epsilon(1e-14));
    const double a = 0.7;
    const double scale = std::exp(a * std::log(2.0) + specfun::log_gamma(2 + a / 2) + specfun::log_gamma(1 + a / 2));
    CHECK(dyda_source(Point{0.3, 0.4}, a) == doctest::Approx(scale * (1 - (1 + a / 2) * 0.25)).epsilon(1e-14));
    CHECK(SourceTerm::dyda(a)(Point{0.3, 0.4}) == doctest::Approx(dyda_source(Point{0.3, 0.4}, a)).epsilon(1e-15));
  }
}
