#include "enskog/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "enskog/errors.hpp"
#include "enskog/simd.hpp"

namespace enskog {

double mean(const double* x, std::size_t n) {
    if (n == 0) return 0.0;
    return simd::backend().sum(x, n) / static_cast<double>(n);
}

double mean(const std::vector<double>& x) { return mean(x.data(), x.size()); }

double variance(const std::vector<double>& x) {
    std::size_t n = x.size();
    if (n < 2) return 0.0;
    double m = mean(x);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - m;
    double ss = simd::backend().sum_sq(centered.data(), n);
    return ss / static_cast<double>(n - 1);
}

double standard_error(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

MeanCov3 mean_cov3(const std::vector<Vec3>& v) {
    MeanCov3 out;
    std::size_t n = v.size();
    out.count = n;
    if (n == 0) return out;
    std::vector<double> comp[3];
    for (int c = 0; c < 3; ++c) comp[c].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        comp[0][i] = v[i].x;
        comp[1][i] = v[i].y;
        comp[2][i] = v[i].z;
    }
    double m[3];
    for (int c = 0; c < 3; ++c) {
        m[c] = mean(comp[c]);
        for (std::size_t i = 0; i < n; ++i) comp[c][i] -= m[c];
    }
    out.mean = Vec3{m[0], m[1], m[2]};
    if (n < 2) return out;
    for (int a = 0; a < 3; ++a) {
        for (int b = a; b < 3; ++b) {
            double s = simd::backend().dot(comp[a].data(), comp[b].data(), n);
            out.cov[a][b] = out.cov[b][a] = s / static_cast<double>(n - 1);
        }
    }
    return out;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    std::size_t n = samples.size();
    if (n == 0) throw EmptyRequest("KS statistic needs at least one sample");
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = cdf(samples[i]);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n) - f;
        double lo = f - static_cast<double>(i) / static_cast<double>(n);
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_critical(std::size_t n, double alpha) {
    return std::sqrt(-std::log(alpha / 2.0) / 2.0) /
           std::sqrt(static_cast<double>(n));
}

double poisson_gof_pvalue(const std::vector<long long>& counts, double lambda) {
    if (counts.size() < 2) {
        throw EmptyRequest("goodness-of-fit needs replicate counts");
    }
    double r = static_cast<double>(counts.size());
    boost::math::poisson_distribution<double> law(lambda);

    // Count-axis window outside which the expected mass is negligible; that
    // mass is folded into the edge cells below.
    long long k_lo = 0;
    long long k_hi = 0;
    if (lambda > 0.0) {
        k_lo = static_cast<long long>(
            std::floor(boost::math::quantile(law, 1e-12)));
        k_hi = static_cast<long long>(std::ceil(
            boost::math::quantile(boost::math::complement(law, 1e-12))));
    }

    // Merge adjacent integer bins left to right until each cell expects >= 5.
    // Cells partition all of {0, 1, 2, ...}: the first absorbs the left tail
    // below k_lo, the last is extended to infinity.
    std::vector<double> expected;
    std::vector<long long> cell_hi;  // inclusive upper count of each cell
    double acc = (k_lo > 0)
                     ? r * boost::math::cdf(law, static_cast<double>(k_lo - 1))
                     : 0.0;
    double closed_mass = 0.0;
    for (long long k = k_lo; k <= k_hi; ++k) {
        acc += r * boost::math::pdf(law, static_cast<double>(k));
        if (acc >= 5.0) {
            expected.push_back(acc);
            cell_hi.push_back(k);
            closed_mass += acc;
            acc = 0.0;
        }
    }
    double rest = std::max(r - closed_mass, 0.0);
    if (expected.empty()) {
        expected.push_back(rest);
        cell_hi.push_back(std::numeric_limits<long long>::max());
    } else {
        expected.back() += rest;
        cell_hi.back() = std::numeric_limits<long long>::max();
    }
    if (expected.size() < 2) {
        // Too few replicates to resolve any structure.
        return 1.0;
    }

    std::vector<double> observed(expected.size(), 0.0);
    for (long long c : counts) {
        for (std::size_t j = 0; j < cell_hi.size(); ++j) {
            if (c <= cell_hi[j]) {
                observed[j] += 1.0;
                break;
            }
        }
    }

    double stat = 0.0;
    for (std::size_t j = 0; j < expected.size(); ++j) {
        double diff = observed[j] - expected[j];
        stat += diff * diff / expected[j];
    }
    return chi_squared_sf(stat, static_cast<double>(expected.size() - 1));
}

double normal_cdf(double z) {
    static const boost::math::normal_distribution<double> n01(0.0, 1.0);
    return boost::math::cdf(n01, z);
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> n01(0.0, 1.0);
    return boost::math::quantile(n01, p);
}

double chi_squared_sf(double x, double df) {
    boost::math::chi_squared_distribution<double> law(df);
    return boost::math::cdf(boost::math::complement(law, x));
}

double bonferroni_z(std::size_t k, double base_z) {
    if (k <= 1) return base_z;
    double tail = normal_cdf(-base_z) / static_cast<double>(k);
    return -normal_quantile(tail);
}

}  // namespace enskog
