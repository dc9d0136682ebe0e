#pragma once
// Summary statistics and hypothesis-test machinery. All reductions go
// through the fixed-lane kernels in simd.hpp, so every reported figure is
// bitwise-reproducible across backends and worker counts.

#include <cstddef>
#include <functional>
#include <vector>

#include "enskog/vec3.hpp"

namespace enskog {

double mean(const double* x, std::size_t n);
double mean(const std::vector<double>& x);

// Unbiased sample variance (divisor n-1), two-pass.
double variance(const std::vector<double>& x);

// sqrt(variance / n); 0 for n < 2.
double standard_error(const std::vector<double>& x);

struct MeanCov3 {
    Vec3 mean;
    double cov[3][3] = {};
    std::size_t count = 0;
};

// Sample mean and unbiased covariance of a vector cloud.
MeanCov3 mean_cov3(const std::vector<Vec3>& v);

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic KS critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
double ks_critical(std::size_t n, double alpha);

// Pearson goodness-of-fit p-value of replicate event counts against a
// Poisson(lambda) law; adjacent count bins are merged until every expected
// cell frequency reaches 5.
double poisson_gof_pvalue(const std::vector<long long>& counts, double lambda);

double normal_cdf(double z);
double normal_quantile(double p);

// Upper tail P(X > x) for a chi-squared variable with df degrees of freedom.
double chi_squared_sf(double x, double df);

// z-threshold giving k simultaneous comparisons the same familywise error
// rate as a single base_z-sigma test (Bonferroni).
double bonferroni_z(std::size_t k, double base_z);

}  // namespace enskog
