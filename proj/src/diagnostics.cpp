#include "enskog/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "enskog/collision.hpp"
#include "enskog/errors.hpp"
#include "enskog/law_distance.hpp"
#include "enskog/rng.hpp"
#include "enskog/stats.hpp"

namespace enskog {
namespace {

constexpr double kBaseZ = 3.0;

std::vector<Vec3> axis_frequencies() {
    const double amps[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    std::vector<Vec3> grid;
    for (int axis = 0; axis < 3; ++axis) {
        for (double a : amps) {
            Vec3 lambda{0.0, 0.0, 0.0};
            lambda[axis] = a;
            grid.push_back(lambda);
        }
    }
    return grid;
}

struct Comparison {
    std::string label;
    double z = 0.0;
    double se = 0.0;
};

void fold_in(DiagnosticsReport& report, std::vector<Comparison>& rows) {
    for (const auto& row : rows) {
        std::ostringstream line;
        line << row.label << " z=" << row.z;
        report.details.push_back(line.str());
        if (row.z > report.statistic) {
            report.statistic = row.z;
            report.standard_error = row.se;
        }
    }
}

double paired_z(const std::vector<double>& diffs, double* se_out) {
    double m = mean(diffs);
    double se = standard_error(diffs);
    *se_out = se;
    if (m == 0.0) return 0.0;
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(m) / se;
}

}  // namespace

std::string DiagnosticsReport::to_string() const {
    std::ostringstream os;
    os << test << ": " << (pass ? "pass" : "FAIL") << " statistic="
       << statistic << " threshold=" << threshold << " se=" << standard_error
       << " n=" << replicate_count;
    for (const auto& d : details) os << "\n  " << d;
    return os.str();
}

DiagnosticsReport tanaka_identity(const AngularMeasure& q,
                                  const SpeedFactor& sigma,
                                  std::size_t sample_count,
                                  std::uint64_t seed) {
    if (sample_count < 2) {
        throw ConfigInvalid("tanaka identity needs at least 2 samples");
    }
    std::vector<Vec3> z(sample_count), zs(sample_count);
    std::vector<double> weight(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        Rng rng(seed, StreamDomain::sampler, i);
        Vec3 zi = rng.normal3();
        Vec3 vi = rng.normal3();
        CollisionAngles xi = q.sample_angles(rng);
        z[i] = zi;
        zs[i] = zi - alpha(zi, vi, xi);
        weight[i] = sigma(norm(zi - vi));
    }

    auto grid = axis_frequencies();
    DiagnosticsReport report;
    report.test = "tanaka_identity";
    report.replicate_count = sample_count;
    report.threshold = bonferroni_z(2 * grid.size(), kBaseZ);

    // lambda = 0: both sides reduce to the same weighted mean, so the
    // paired difference is exactly zero sample by sample.
    std::vector<double> diffs(sample_count);
    for (std::size_t i = 0; i < sample_count; ++i) {
        diffs[i] = weight[i] * 1.0 - weight[i] * 1.0;
    }
    {
        double se = 0.0;
        double z0 = paired_z(diffs, &se);
        std::ostringstream line;
        line << "lambda=0 re diff=" << mean(diffs) << " z=" << z0;
        report.details.push_back(line.str());
    }

    std::vector<Comparison> rows;
    for (const Vec3& lambda : grid) {
        std::ostringstream base;
        base << "lambda=(" << lambda.x << "," << lambda.y << "," << lambda.z
             << ")";
        for (int part = 0; part < 2; ++part) {
            for (std::size_t i = 0; i < sample_count; ++i) {
                double pre = dot(lambda, z[i]);
                double post = dot(lambda, zs[i]);
                double fpre = part == 0 ? std::cos(pre) : std::sin(pre);
                double fpost = part == 0 ? std::cos(post) : std::sin(post);
                diffs[i] = weight[i] * (fpost - fpre);
            }
            Comparison row;
            row.label = base.str() + (part == 0 ? " re" : " im");
            row.z = paired_z(diffs, &row.se);
            rows.push_back(row);
        }
    }
    fold_in(report, rows);
    report.pass = report.statistic <= report.threshold;
    return report;
}

DiagnosticsReport maxwellian_invariance(const Ensemble& law,
                                        const std::vector<double>& times) {
    if (times.empty()) {
        throw ConfigInvalid("invariance check needs at least one time");
    }
    DiagnosticsReport report;
    report.test = "maxwellian_invariance";
    report.replicate_count = law.size() * times.size();

    auto grid = axis_frequencies();
    // Comparisons per time: 3 means, 6 covariance entries, the mean squared
    // speed, and real+imaginary characteristic-function points. The KS
    // statistics keep their own 1% criterion and are only folded onto the
    // same z-scale.
    std::size_t k = times.size() * (3 + 6 + 1 + 2 * grid.size());
    report.threshold = bonferroni_z(k, kBaseZ);

    std::vector<Comparison> rows;
    for (double t : times) {
        auto states = marginal_at(law, t);
        std::size_t n = states.size();
        std::vector<Vec3> vel(n);
        for (std::size_t i = 0; i < n; ++i) vel[i] = states[i].velocity;
        MeanCov3 mc = mean_cov3(vel);
        double root_n = std::sqrt(static_cast<double>(n));

        for (int c = 0; c < 3; ++c) {
            Comparison row;
            std::ostringstream label;
            label << "t=" << t << " mean[" << c << "]";
            row.label = label.str();
            row.se = 1.0 / root_n;  // component variance is 1 under the law
            row.z = std::abs(mc.mean[c]) / row.se;
            rows.push_back(row);
        }
        for (int a = 0; a < 3; ++a) {
            for (int b = a; b < 3; ++b) {
                double target = a == b ? 1.0 : 0.0;
                double var = (mc.cov[a][a] * mc.cov[b][b] +
                              mc.cov[a][b] * mc.cov[a][b]) /
                             static_cast<double>(n - 1);
                Comparison row;
                std::ostringstream label;
                label << "t=" << t << " cov[" << a << "][" << b << "]";
                row.label = label.str();
                row.se = std::sqrt(var);
                row.z = std::abs(mc.cov[a][b] - target) / row.se;
                rows.push_back(row);
            }
        }
        {
            std::vector<double> sq(n);
            for (std::size_t i = 0; i < n; ++i) sq[i] = norm_sq(vel[i]);
            Comparison row;
            std::ostringstream label;
            label << "t=" << t << " mean|Z|^2";
            row.label = label.str();
            row.se = standard_error(sq);
            row.z = std::abs(mean(sq) - 3.0) / row.se;
            rows.push_back(row);
        }
        std::vector<double> vals(n);
        for (const Vec3& lambda : grid) {
            double target = std::exp(-norm_sq(lambda) / 2.0);
            for (int part = 0; part < 2; ++part) {
                for (std::size_t i = 0; i < n; ++i) {
                    double p = dot(lambda, vel[i]);
                    vals[i] = part == 0 ? std::cos(p) : std::sin(p);
                }
                Comparison row;
                std::ostringstream label;
                label << "t=" << t << " ecf(" << lambda.x << "," << lambda.y
                      << "," << lambda.z << ")" << (part == 0 ? " re" : " im");
                row.label = label.str();
                row.se = standard_error(vals);
                double want = part == 0 ? target : 0.0;
                row.z = std::abs(mean(vals) - want) / row.se;
                rows.push_back(row);
            }
        }
        double crit = ks_critical(n, 0.01);
        for (int c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < n; ++i) vals[i] = vel[i][c];
            double d = ks_statistic(vals, [](double x) { return normal_cdf(x); });
            Comparison row;
            std::ostringstream label;
            label << "t=" << t << " ks[" << c << "]";
            row.label = label.str();
            row.se = crit;
            row.z = report.threshold * d / crit;
            rows.push_back(row);
        }
    }
    fold_in(report, rows);
    report.pass = report.statistic <= report.threshold;
    return report;
}

DiagnosticsReport weak_form_residual(const Ensemble& law,
                                     const KernelSet& kernels,
                                     const TestFunction& psi, double t0,
                                     double dt, std::uint64_t seed) {
    if (law.kind != EnsembleKind::frozen_paths) {
        throw ConfigInvalid("weak-form residual needs a path ensemble");
    }
    if (!(dt > 0.0) || t0 - dt < 0.0 || t0 + dt > law.time_horizon) {
        throw ConfigInvalid("weak-form stencil leaves the time horizon");
    }
    std::size_t n = law.size();
    if (n < 2) throw ConfigInvalid("weak-form residual needs >= 2 members");
    double lambda = kernels.q.total_rate();

    auto center = marginal_at(law, t0);

    // Per-member finite difference minus transport; the pairing keeps the
    // common O(1) part of psi out of the standard error.
    auto fd_rows = [&](double h, std::vector<double>& out) {
        auto lo = marginal_at(law, t0 - h);
        auto hi = marginal_at(law, t0 + h);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double fd = (psi.value(hi[i].position, hi[i].velocity) -
                         psi.value(lo[i].position, lo[i].velocity)) /
                        (2.0 * h);
            double transport = dot(psi.grad_x(center[i].position,
                                              center[i].velocity),
                                   center[i].velocity);
            out[i] = fd - transport;
        }
    };

    std::vector<double> c_full, c_half;
    fd_rows(dt, c_full);
    fd_rows(dt / 2.0, c_half);

    // Jump-generator term by double Monte Carlo over (member, partner,
    // angles) at the center time.
    std::vector<double> gen(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(seed, StreamDomain::pairs, i);
        std::size_t pick = rng.uniform_index(n - 1);
        std::size_t j = pick >= i ? pick + 1 : pick;
        CollisionAngles xi = kernels.q.sample_angles(rng);
        const Vec3& x = center[i].position;
        const Vec3& u = center[i].velocity;
        const Vec3& y = center[j].position;
        const Vec3& v = center[j].velocity;
        Vec3 u_post = u - alpha(u, v, xi);
        double rate = kernels.sigma(norm(u - v)) * kernels.beta(norm(x - y));
        gen[i] = (psi.value(x, u_post) - psi.value(x, u)) * rate * lambda;
    }
    double g = mean(gen);
    double se_g = standard_error(gen);

    double d_full = mean(c_full);
    double d_half = mean(c_half);
    double se_full = std::sqrt(standard_error(c_full) * standard_error(c_full) +
                               se_g * se_g);
    double se_half = std::sqrt(standard_error(c_half) * standard_error(c_half) +
                               se_g * se_g);

    // FD(h) = m'(t0) + C h^2 + O(h^4), so the dt vs dt/2 gap isolates C.
    double c_fd = (4.0 / 3.0) * std::abs(d_full - d_half) / (dt * dt);

    double r_full = d_full - g;
    double r_half = d_half - g;
    double bound_full = 3.0 * se_full + c_fd * dt * dt;
    double bound_half = 3.0 * se_half + c_fd * (dt / 2.0) * (dt / 2.0);

    DiagnosticsReport report;
    report.test = "weak_form_residual " + psi.name;
    report.replicate_count = n;
    report.threshold = 1.0;
    report.standard_error = se_full;
    double ratio_full = std::abs(r_full) / bound_full;
    double ratio_half = std::abs(r_half) / bound_half;
    report.statistic = std::max(ratio_full, ratio_half);
    report.pass = report.statistic <= report.threshold;
    {
        std::ostringstream line;
        line << "dt=" << dt << " residual=" << r_full << " bound="
             << bound_full << " (3se=" << 3.0 * se_full << " bias="
             << c_fd * dt * dt << ")";
        report.details.push_back(line.str());
    }
    {
        std::ostringstream line;
        line << "dt/2=" << dt / 2.0 << " residual=" << r_half << " bound="
             << bound_half;
        report.details.push_back(line.str());
    }
    {
        std::ostringstream line;
        line << "generator=" << g << " fd-transport=" << d_full
             << " c_fd=" << c_fd;
        report.details.push_back(line.str());
    }
    return report;
}

DiagnosticsReport marginal_uniqueness(const Ensemble& a, const Ensemble& b,
                                      const std::vector<double>& times,
                                      int dictionary_size) {
    if (times.empty()) {
        throw ConfigInvalid("uniqueness check needs at least one time");
    }
    if (a.size() < 4) {
        throw ConfigInvalid("uniqueness null needs >= 4 members in run a");
    }
    // Split-half null: two halves of run a share the law exactly, so their
    // distance profile calibrates the finite-sample scale.
    Ensemble lo, hi;
    lo.kind = hi.kind = a.kind;
    lo.time_horizon = hi.time_horizon = a.time_horizon;
    lo.seed_lineage = hi.seed_lineage = a.seed_lineage;
    std::size_t half = a.size() / 2;
    if (a.kind == EnsembleKind::frozen_paths) {
        lo.paths.assign(a.paths.begin(), a.paths.begin() + half);
        hi.paths.assign(a.paths.begin() + half, a.paths.end());
    } else {
        lo.states.assign(a.states.begin(), a.states.begin() + half);
        hi.states.assign(a.states.begin() + half, a.states.end());
    }

    DiagnosticsReport report;
    report.test = "marginal_uniqueness";
    report.replicate_count = a.size() + b.size();
    report.threshold = kBaseZ;

    for (double t : times) {
        LawDistance null_d = law_distance(lo, hi, t, dictionary_size);
        LawDistance cross = law_distance(a, b, t, dictionary_size);
        double se = std::sqrt(null_d.standard_error * null_d.standard_error +
                              cross.standard_error * cross.standard_error);
        double z = (cross.value - null_d.value) / se;
        std::ostringstream line;
        line << "t=" << t << " cross=" << cross.value << " null="
             << null_d.value << " z=" << z;
        report.details.push_back(line.str());
        if (z > report.statistic) {
            report.statistic = z;
            report.standard_error = se;
        }
    }
    report.pass = report.statistic <= report.threshold;
    return report;
}

}  // namespace enskog
