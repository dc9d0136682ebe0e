#include <doctest.h>

#include <cmath>
#include <vector>

#include "enskog/errors.hpp"
#include "enskog/rng.hpp"
#include "enskog/stats.hpp"

using namespace enskog;

TEST_CASE("mean, variance, standard error on a known sample") {
    std::vector<double> x = {1, 2, 3, 4, 5};
    CHECK(mean(x) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(variance(x) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(standard_error(x) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(standard_error({7.0}) == 0.0);
}

TEST_CASE("vector mean and covariance on a constructed cloud") {
    std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 2, 0}, {0, -2, 0}};
    MeanCov3 mc = mean_cov3(v);
    CHECK(mc.mean == Vec3{0, 0, 0});
    CHECK(mc.cov[0][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(mc.cov[1][1] == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(mc.cov[2][2] == 0.0);
    CHECK(mc.cov[0][1] == 0.0);
    CHECK(mc.count == 4);
}

TEST_CASE("KS statistic against the uniform CDF by hand") {
    double d = ks_statistic({0.1, 0.2, 0.3}, [](double x) { return x; });
    CHECK(d == doctest::Approx(0.7).epsilon(1e-15));
    CHECK_THROWS_AS(ks_statistic({}, [](double x) { return x; }),
                    EmptyRequest);
}

TEST_CASE("KS critical value at the 1% level") {
    CHECK(ks_critical(1000000, 0.01) ==
          doctest::Approx(1.6276236115189504 / 1000.0).epsilon(1e-10));
}

TEST_CASE("count goodness-of-fit accepts matching draws, rejects shifted") {
    // Inverse-CDF draws so the replicate counts really are Poisson(6).
    auto draw = [](double lambda, Rng& rng) {
        double u = rng.uniform();
        double p = std::exp(-lambda), c = p;
        long long k = 0;
        while (u > c && k < 1000) {
            ++k;
            p *= lambda / k;
            c += p;
        }
        return k;
    };
    Rng rng(123, StreamDomain::sampler, 9);
    std::vector<long long> good(100), shifted(100);
    for (int i = 0; i < 100; ++i) {
        good[i] = draw(6.0, rng);
        shifted[i] = good[i] + 3;
    }
    CHECK(poisson_gof_pvalue(good, 6.0) > 0.01);
    CHECK(poisson_gof_pvalue(shifted, 6.0) < 0.01);
}

TEST_CASE("normal CDF and quantile invert each other") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_quantile(0.975) ==
          doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(normal_cdf(1.3)) ==
          doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("chi-squared survival function") {
    CHECK(chi_squared_sf(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
    // P(chi2_1 > 3.841459...) = 0.05.
    CHECK(chi_squared_sf(3.841458820694124, 1.0) ==
          doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("familywise threshold grows with the comparison count") {
    CHECK(bonferroni_z(1, 3.0) == doctest::Approx(3.0).epsilon(1e-12));
    double z10 = bonferroni_z(10, 3.0);
    CHECK(z10 > 3.0);
    // The familywise rate is restored: k * P(Z > z_k) = P(Z > 3).
    CHECK(10.0 * (1.0 - normal_cdf(z10)) ==
          doctest::Approx(1.0 - normal_cdf(3.0)).epsilon(1e-9));
}
