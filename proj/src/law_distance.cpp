#include "enskog/law_distance.hpp"

#include <cmath>
#include <vector>

#include "enskog/errors.hpp"
#include "enskog/simd.hpp"

namespace enskog {
namespace {

constexpr std::size_t kBootstrapReplicates = 100;
constexpr std::uint64_t kBootstrapSeed = 0x4c61774431353731ull;

struct Columns {
    std::vector<double> px, py, pz, vx, vy, vz;
    std::size_t n = 0;
};

Columns split(const std::vector<ParticleState>& states) {
    Columns c;
    c.n = states.size();
    c.px.resize(c.n);
    c.py.resize(c.n);
    c.pz.resize(c.n);
    c.vx.resize(c.n);
    c.vy.resize(c.n);
    c.vz.resize(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
        c.px[i] = states[i].position.x;
        c.py[i] = states[i].position.y;
        c.pz[i] = states[i].position.z;
        c.vx[i] = states[i].velocity.x;
        c.vy[i] = states[i].velocity.y;
        c.vz[i] = states[i].velocity.z;
    }
    return c;
}

std::vector<Vec3> frequency_grid() {
    static const double coef[6] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    std::vector<Vec3> freqs;
    freqs.reserve(18 + 216);
    for (int axis = 0; axis < 3; ++axis) {
        for (double a : coef) {
            Vec3 f;
            f[axis] = a;
            freqs.push_back(f);
        }
    }
    for (double fx : coef) {
        for (double fy : coef) {
            for (double fz : coef) {
                freqs.push_back(Vec3{fx, fy, fz});
            }
        }
    }
    return freqs;
}

// Rows of the feature matrix, one dictionary entry per row, column-major in
// the member index. Entries are generated lazily up to `size` rows.
std::vector<std::vector<double>> feature_rows(const Columns& c,
                                              std::size_t size) {
    std::vector<std::vector<double>> rows;
    rows.reserve(size);
    auto emit = [&](auto&& fill) {
        if (rows.size() >= size) return false;
        std::vector<double> row(c.n);
        fill(row);
        rows.push_back(std::move(row));
        return true;
    };

    const std::vector<double>* vcomp[3] = {&c.vx, &c.vy, &c.vz};
    const std::vector<double>* pcomp[3] = {&c.px, &c.py, &c.pz};
    for (int i = 0; i < 3; ++i) {
        emit([&](std::vector<double>& row) {
            for (std::size_t k = 0; k < c.n; ++k) {
                row[k] = std::tanh((*vcomp[i])[k] / 2.0);
            }
        });
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            emit([&](std::vector<double>& row) {
                for (std::size_t k = 0; k < c.n; ++k) {
                    row[k] =
                        std::tanh((*vcomp[i])[k] * (*vcomp[j])[k] / 4.0);
                }
            });
        }
    }
    for (int i = 0; i < 3; ++i) {
        emit([&](std::vector<double>& row) {
            for (std::size_t k = 0; k < c.n; ++k) {
                row[k] = std::tanh((*pcomp[i])[k] / 4.0);
            }
        });
    }

    std::vector<double> dots(c.n);
    for (const Vec3& f : frequency_grid()) {
        if (rows.size() >= size) break;
        simd::backend().combine3(c.vx.data(), c.vy.data(), c.vz.data(), f.x,
                                 f.y, f.z, dots.data(), c.n);
        emit([&](std::vector<double>& row) {
            for (std::size_t k = 0; k < c.n; ++k) row[k] = std::cos(dots[k]);
        });
        emit([&](std::vector<double>& row) {
            for (std::size_t k = 0; k < c.n; ++k) row[k] = std::sin(dots[k]);
        });
    }
    return rows;
}

double max_mean_gap(const std::vector<std::vector<double>>& fa,
                    const std::vector<std::vector<double>>& fb) {
    double worst = 0.0;
    for (std::size_t r = 0; r < fa.size(); ++r) {
        double ma = simd::backend().sum(fa[r].data(), fa[r].size()) /
                    static_cast<double>(fa[r].size());
        double mb = simd::backend().sum(fb[r].data(), fb[r].size()) /
                    static_cast<double>(fb[r].size());
        worst = std::max(worst, std::abs(ma - mb));
    }
    return worst;
}

double max_mean_gap_resampled(const std::vector<std::vector<double>>& fa,
                              const std::vector<std::vector<double>>& fb,
                              const std::vector<std::size_t>& idx_a,
                              const std::vector<std::size_t>& idx_b,
                              std::vector<double>& scratch_a,
                              std::vector<double>& scratch_b) {
    double worst = 0.0;
    for (std::size_t r = 0; r < fa.size(); ++r) {
        const auto& ra = fa[r];
        const auto& rb = fb[r];
        for (std::size_t k = 0; k < idx_a.size(); ++k) {
            scratch_a[k] = ra[idx_a[k]];
        }
        for (std::size_t k = 0; k < idx_b.size(); ++k) {
            scratch_b[k] = rb[idx_b[k]];
        }
        double ma = simd::backend().sum(scratch_a.data(), idx_a.size()) /
                    static_cast<double>(idx_a.size());
        double mb = simd::backend().sum(scratch_b.data(), idx_b.size()) /
                    static_cast<double>(idx_b.size());
        worst = std::max(worst, std::abs(ma - mb));
    }
    return worst;
}

}  // namespace

LawDistance law_distance(const Ensemble& a, const Ensemble& b, double t,
                         int dictionary_size) {
    if (dictionary_size < 1) {
        throw ConfigInvalid("dictionary_size must be >= 1");
    }
    Columns ca = split(marginal_at(a, t));
    Columns cb = split(marginal_at(b, t));

    std::size_t requested = static_cast<std::size_t>(dictionary_size);
    std::size_t full = 12 + 2 * frequency_grid().size();
    std::size_t size = std::min(requested, full);

    auto fa = feature_rows(ca, size);
    auto fb = feature_rows(cb, size);

    LawDistance out;
    out.test_family_size = static_cast<int>(size);
    out.value = max_mean_gap(fa, fb);

    // Bootstrap over member resampling, both ensembles independently. The
    // stream is fixed, so the estimate is reproducible.
    std::vector<double> replicate(kBootstrapReplicates);
    std::vector<std::size_t> idx_a(ca.n), idx_b(cb.n);
    std::vector<double> scratch_a(ca.n), scratch_b(cb.n);
    for (std::size_t rep = 0; rep < kBootstrapReplicates; ++rep) {
        Rng rng(kBootstrapSeed, StreamDomain::bootstrap, rep);
        for (std::size_t k = 0; k < ca.n; ++k) {
            idx_a[k] = rng.uniform_index(ca.n);
        }
        for (std::size_t k = 0; k < cb.n; ++k) {
            idx_b[k] = rng.uniform_index(cb.n);
        }
        replicate[rep] =
            max_mean_gap_resampled(fa, fb, idx_a, idx_b, scratch_a, scratch_b);
    }
    double m = 0.0;
    for (double v : replicate) m += v;
    m /= static_cast<double>(kBootstrapReplicates);
    double ss = 0.0;
    for (double v : replicate) ss += (v - m) * (v - m);
    out.standard_error =
        std::sqrt(ss / static_cast<double>(kBootstrapReplicates - 1));
    return out;
}

}  // namespace enskog
