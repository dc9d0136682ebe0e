#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "enskog/collision.hpp"
#include "enskog/errors.hpp"
#include "enskog/kernels.hpp"
#include "enskog/rng.hpp"
#include "enskog/stats.hpp"

using namespace enskog;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson rule, for independent moment cross-checks.
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
    double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("uniform family moments in closed form at unit mass") {
    AngularMeasure q = AngularMeasure::uniform(1.0);
    CHECK(q.mass_theta() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.total_rate() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    AngularMoments m = q.moments();
    CHECK(m.m1 == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    CHECK(m.m2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.mtheta == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("uniform family moments match direct integration") {
    double mass = 2.0, tmin = 0.5;
    AngularMeasure q = AngularMeasure::uniform(mass, tmin);
    double d = mass / (kPi - tmin);
    AngularMoments m = q.moments();
    CHECK(m.m1 == doctest::Approx(simpson(
                      [d](double t) { return d * std::sin(t / 2); }, tmin,
                      kPi, 4000)).epsilon(1e-12));
    CHECK(m.m2 == doctest::Approx(simpson(
                      [d](double t) {
                          double s = std::sin(t / 2);
                          return d * s * s;
                      },
                      tmin, kPi, 4000)).epsilon(1e-12));
    CHECK(m.mtheta == doctest::Approx(simpson(
                          [d](double t) { return d * t; }, tmin, kPi,
                          4000)).epsilon(1e-12));
    CHECK(q.mass_above(1.0) ==
          doctest::Approx(d * (kPi - 1.0)).epsilon(1e-14));
}

TEST_CASE("zero-mass uniform measure is a valid ballistic limit") {
    AngularMeasure q = AngularMeasure::uniform(0.0);
    CHECK(q.total_rate() == 0.0);
    CHECK(q.moments().m1 == 0.0);
    Rng rng(1, StreamDomain::sampler, 0);
    CHECK_THROWS_AS(q.sample_theta(rng), ConfigInvalid);
    CHECK_THROWS_AS(q.quantile_theta(0.5), ConfigInvalid);
}

TEST_CASE("uniform quantile is the linear map") {
    AngularMeasure q = AngularMeasure::uniform(1.0);
    CHECK(q.quantile_theta(0.5) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(q.quantile_theta(0.0) == doctest::Approx(0.0));
    AngularMeasure shifted = AngularMeasure::uniform(3.0, 1.0);
    CHECK(shifted.quantile_theta(0.25) ==
          doctest::Approx(1.0 + 0.25 * (kPi - 1.0)).epsilon(1e-14));
}

TEST_CASE("uniform sampler passes a KS test at the 1% level") {
    AngularMeasure q = AngularMeasure::uniform(1.0, 0.25);
    const std::size_t n = 1000000;
    Rng rng(7, StreamDomain::sampler, 1);
    std::vector<double> t(n);
    for (auto& x : t) {
        x = q.sample_theta(rng);
        REQUIRE(x > 0.25);
        REQUIRE(x <= kPi);
    }
    double d = ks_statistic(
        t, [](double x) { return (x - 0.25) / (kPi - 0.25); });
    CHECK(d < ks_critical(n, 0.01));
}

TEST_CASE("power-law family closed forms and quadrature moments") {
    double c = 0.7, tmin = 0.25;
    AngularMeasure q = AngularMeasure::maxwellian_power(c, tmin);
    double a = 1.0 / std::sqrt(tmin), b = 1.0 / std::sqrt(kPi);
    CHECK(q.mass_theta() == doctest::Approx(2 * c * (a - b)).epsilon(1e-13));
    AngularMoments m = q.moments();
    CHECK(m.mtheta == doctest::Approx(2 * c * (std::sqrt(kPi) -
                                               std::sqrt(tmin)))
                          .epsilon(1e-13));
    auto density = [c](double t) { return c * std::pow(t, -1.5); };
    CHECK(m.m1 == doctest::Approx(simpson(
                      [&](double t) { return density(t) * std::sin(t / 2); },
                      tmin, kPi, 8000)).epsilon(1e-10));
    CHECK(m.m2 == doctest::Approx(simpson(
                      [&](double t) {
                          double s = std::sin(t / 2);
                          return density(t) * s * s;
                      },
                      tmin, kPi, 8000)).epsilon(1e-10));
}

TEST_CASE("power-law family with full support: infinite mass, finite moments") {
    double c = 0.3;
    AngularMeasure q = AngularMeasure::maxwellian_power(c, 0.0);
    CHECK(std::isinf(q.mass_theta()));
    CHECK(std::isinf(q.total_rate()));
    CHECK(q.mass_above(0.01) ==
          doctest::Approx(2 * c * (10.0 - 1.0 / std::sqrt(kPi)))
              .epsilon(1e-13));

    // Independent check of m1 after substituting t = s^2, which removes
    // the endpoint singularity.
    auto g = [c](double s) {
        if (s < 1e-4) return c;
        return 2 * c * std::sin(s * s / 2) / (s * s);
    };
    double want_m1 = simpson(g, 0.0, std::sqrt(kPi), 8000);
    AngularMoments m = q.moments();
    CHECK(m.m1 == doctest::Approx(want_m1).epsilon(1e-9));
    CHECK(std::isfinite(m.m2));
    CHECK(m.m2 < m.m1);
}

TEST_CASE("power-law sampler inverts its distribution function") {
    double c = 1.1, tmin = 0.25;
    AngularMeasure q = AngularMeasure::maxwellian_power(c, tmin);
    double a = 1.0 / std::sqrt(tmin), b = 1.0 / std::sqrt(kPi);
    const std::size_t n = 200000;
    Rng rng(8, StreamDomain::sampler, 2);
    std::vector<double> t(n);
    for (auto& x : t) {
        x = q.sample_theta(rng);
        REQUIRE(x > tmin);
        REQUIRE(x <= kPi);
    }
    double d = ks_statistic(t, [&](double x) {
        return (a - 1.0 / std::sqrt(x)) / (a - b);
    });
    CHECK(d < ks_critical(n, 0.01));
}

TEST_CASE("table family: mass, moments, and a dead cell") {
    std::vector<double> edges = {0.5, 1.5, 2.5, kPi};
    std::vector<double> density = {2.0, 0.0, 1.0};
    AngularMeasure q = AngularMeasure::custom_table(edges, density);
    double mass = 2.0 + (kPi - 2.5);
    CHECK(q.mass_theta() == doctest::Approx(mass).epsilon(1e-14));

    auto cellwise = [&](const std::function<double(double)>& f) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            acc += density[i] *
                   simpson(f, edges[i], edges[i + 1], 2000);
        }
        return acc;
    };
    AngularMoments m = q.moments();
    CHECK(m.m1 == doctest::Approx(cellwise([](double t) {
                      return std::sin(t / 2);
                  })).epsilon(1e-11));
    CHECK(m.m2 == doctest::Approx(cellwise([](double t) {
                      double s = std::sin(t / 2);
                      return s * s;
                  })).epsilon(1e-11));
    CHECK(m.mtheta == doctest::Approx(cellwise([](double t) {
                          return t;
                      })).epsilon(1e-11));

    // The quantile skips the zero-density cell.
    CHECK(q.quantile_theta(2.0 / mass) == doctest::Approx(2.5));
    CHECK(q.quantile_theta(1.999999 / mass) < 1.5);
    Rng rng(9, StreamDomain::sampler, 3);
    for (int i = 0; i < 100000; ++i) {
        double t = q.sample_theta(rng);
        REQUIRE(t > 0.5);
        REQUIRE(t <= kPi);
        REQUIRE(!(t > 1.5000001 && t < 2.4999999));
    }
}

TEST_CASE("table family rejects malformed input") {
    CHECK_THROWS_AS(AngularMeasure::custom_table({0.5}, {}), ConfigInvalid);
    CHECK_THROWS_AS(AngularMeasure::custom_table({1.0, 0.5}, {1.0}),
                    ConfigInvalid);
    CHECK_THROWS_AS(AngularMeasure::custom_table({0.5, 4.0}, {1.0}),
                    ConfigInvalid);
    CHECK_THROWS_AS(AngularMeasure::custom_table({0.5, 1.0}, {-1.0}),
                    ConfigInvalid);
}

TEST_CASE("mean transfer magnitude matches the first angular moment") {
    AngularMeasure q = AngularMeasure::uniform(1.0 / kPi);
    Vec3 z{1, 0, 0}, v{-1, 0, 0};
    const std::size_t n = 200000;
    Rng rng(10, StreamDomain::sampler, 4);
    std::vector<double> mags(n);
    for (auto& m : mags) {
        m = norm(alpha(z, v, q.sample_angles(rng)));
    }
    // E|transfer| over the normalized angular draw is |z - v| m1 / mass;
    // scaled by the candidate rate mass * 2 pi this is the identity
    // rate * E = m1 * 2 pi * |z - v|.
    double want = norm(z - v) * q.moments().m1 / q.mass_theta();
    CHECK(std::abs(mean(mags) - want) < 5.0 * standard_error(mags));
    CHECK(q.total_rate() * want ==
          doctest::Approx(q.moments().m1 * 2.0 * kPi * norm(z - v))
              .epsilon(1e-12));
}

TEST_CASE("speed factor families") {
    SpeedFactor one = SpeedFactor::constant_one();
    CHECK(one(0.0) == 1.0);
    CHECK(one(17.5) == 1.0);
    CHECK(one.lipschitz_bound() == 0.0);
    CHECK(one.family_name() == "constant_one");

    SpeedFactor sat = SpeedFactor::smooth_saturating(2.0);
    CHECK(sat(0.3) == doctest::Approx(std::tanh(0.6)).epsilon(1e-15));
    CHECK(sat(0.0) == 0.0);
    CHECK(sat.lipschitz_bound() == 2.0);

    SpeedFactor half = SpeedFactor::custom([](double) { return 0.5; }, 0.0);
    CHECK(half(3.0) == 0.5);
    CHECK(evaluate_sigma(half, 3.0) == 0.5);
}

TEST_CASE("mollifier shapes") {
    Mollifier b = Mollifier::bump(1.0);
    CHECK(b(0.0) == 1.0);
    CHECK(b(1.0 / std::sqrt(2.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(b(1.0) == 0.0);
    CHECK(b(2.0) == 0.0);
    CHECK(b.support_radius() == 1.0);

    Mollifier c = Mollifier::cosine_taper(2.0);
    CHECK(c(0.0) == 1.0);
    CHECK(c(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c(2.0) == 0.0);

    Mollifier inf_b = Mollifier::bump(
        std::numeric_limits<double>::infinity());
    CHECK(inf_b(0.0) == 1.0);
    CHECK(inf_b(1e300) == 1.0);
    CHECK(evaluate_beta(inf_b, 42.0) == 1.0);
}

TEST_CASE("hypothesis validation accepts the default kernels") {
    ValidationReport r = validate_hypotheses(AngularMeasure::uniform(1.0),
                                             SpeedFactor::constant_one(),
                                             Mollifier::bump(0.5));
    CHECK(r.passed);
    CHECK(r.violations.empty());
}

TEST_CASE("hypothesis validation accepts infinite-mass angular measures") {
    ValidationReport r = validate_hypotheses(
        AngularMeasure::maxwellian_power(0.5, 0.0),
        SpeedFactor::constant_one(), Mollifier::bump(0.5));
    CHECK(r.passed);
}

TEST_CASE("hypothesis validation notes an everywhere-positive mollifier") {
    ValidationReport r = validate_hypotheses(
        AngularMeasure::uniform(1.0), SpeedFactor::constant_one(),
        Mollifier::bump(std::numeric_limits<double>::infinity()));
    CHECK(r.passed);
    CHECK(!r.notes.empty());
}

TEST_CASE("hypothesis validation flags an understated modulus bound") {
    SpeedFactor steep = SpeedFactor::custom(
        [](double r) { return std::min(1.0, 2.0 * r); }, 1.0);
    ValidationReport r =
        validate_hypotheses(AngularMeasure::uniform(1.0), steep,
                            Mollifier::bump(0.5));
    CHECK(!r.passed);
    CHECK(!r.violations.empty());
}

TEST_CASE("hypothesis validation flags values above one") {
    SpeedFactor big = SpeedFactor::custom([](double) { return 1.5; }, 0.0);
    ValidationReport r = validate_hypotheses(AngularMeasure::uniform(1.0),
                                             big, Mollifier::bump(0.5));
    CHECK(!r.passed);
}
