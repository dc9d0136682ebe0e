#include "enskog/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "enskog/errors.hpp"

namespace enskog {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double integrate_01_singular(const std::function<double(double)>& f, double a,
                             double b) {
    // tanh-sinh never evaluates the endpoints, so integrable endpoint
    // singularities (theta^(-1/2) at theta_min = 0) are handled directly.
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    double value = integrator.integrate(f, a, b, 1e-12, &error, &l1);
    if (!(error < 1e-10) && !(error < 1e-10 * std::max(1.0, std::abs(value)))) {
        throw NonIntegrable("angular moment quadrature failed to converge");
    }
    return value;
}

void check_angle_range(double theta_min) {
    if (!(theta_min >= 0.0) || !(theta_min < kPi)) {
        throw ConfigInvalid("theta_min must lie in [0, pi)");
    }
}

}  // namespace

AngularMeasure AngularMeasure::uniform(double mass, double theta_min) {
    check_angle_range(theta_min);
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw ConfigInvalid("uniform angular measure needs finite mass >= 0");
    }
    AngularMeasure q;
    q.family_ = AngularFamily::uniform;
    q.theta_min_ = theta_min;
    q.mass_theta_ = mass;
    q.total_rate_ = mass * kTwoPi;
    double d = mass / (kPi - theta_min);
    q.moments_.m1 = 2.0 * d * std::cos(theta_min / 2.0);
    q.moments_.m2 = d * ((kPi - theta_min) / 2.0 + std::sin(theta_min) / 2.0);
    q.moments_.mtheta = d * (kPi * kPi - theta_min * theta_min) / 2.0;
    return q;
}

AngularMeasure AngularMeasure::maxwellian_power(double coefficient,
                                                double theta_min) {
    check_angle_range(theta_min);
    if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
        throw ConfigInvalid("maxwellian_power needs a finite coefficient > 0");
    }
    AngularMeasure q;
    q.family_ = AngularFamily::maxwellian_power;
    q.theta_min_ = theta_min;
    q.coefficient_ = coefficient;
    if (theta_min > 0.0) {
        q.mass_theta_ = 2.0 * coefficient *
                        (1.0 / std::sqrt(theta_min) - 1.0 / std::sqrt(kPi));
    } else {
        q.mass_theta_ = std::numeric_limits<double>::infinity();
    }
    q.total_rate_ = q.mass_theta_ * kTwoPi;
    // Grouped as (sin(t/2)/t) * t^(-1/2) so evaluation stays finite for the
    // abscissae tanh-sinh places arbitrarily close to a zero endpoint.
    q.moments_.m1 = integrate_01_singular(
        [coefficient](double t) {
            return coefficient * (std::sin(t / 2.0) / t) / std::sqrt(t);
        },
        theta_min, kPi);
    q.moments_.m2 = integrate_01_singular(
        [coefficient](double t) {
            double ratio = std::sin(t / 2.0) / t;
            return coefficient * ratio * ratio * std::sqrt(t);
        },
        theta_min, kPi);
    q.moments_.mtheta =
        2.0 * coefficient * (std::sqrt(kPi) - std::sqrt(theta_min));
    return q;
}

AngularMeasure AngularMeasure::custom_table(std::vector<double> edges,
                                            std::vector<double> density) {
    if (edges.size() < 2 || density.size() != edges.size() - 1) {
        throw ConfigInvalid("custom_table needs n+1 edges for n density cells");
    }
    if (!(edges.front() >= 0.0) || !(edges.back() <= kPi)) {
        throw ConfigInvalid("custom_table edges must lie within [0, pi]");
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) {
            throw ConfigInvalid("custom_table edges must increase strictly");
        }
    }
    for (double d : density) {
        if (!(d >= 0.0) || !std::isfinite(d)) {
            throw ConfigInvalid("custom_table density must be finite and >= 0");
        }
    }
    AngularMeasure q;
    q.family_ = AngularFamily::custom_table;
    q.theta_min_ = edges.front();
    q.edges_ = std::move(edges);
    q.density_ = std::move(density);
    q.cumulative_.assign(q.edges_.size(), 0.0);
    for (std::size_t i = 0; i < q.density_.size(); ++i) {
        double a = q.edges_[i];
        double b = q.edges_[i + 1];
        double d = q.density_[i];
        q.cumulative_[i + 1] = q.cumulative_[i] + d * (b - a);
        q.moments_.m1 += d * 2.0 * (std::cos(a / 2.0) - std::cos(b / 2.0));
        q.moments_.m2 +=
            d * ((b - a) / 2.0 - (std::sin(b) - std::sin(a)) / 2.0);
        q.moments_.mtheta += d * (b * b - a * a) / 2.0;
    }
    q.mass_theta_ = q.cumulative_.back();
    q.total_rate_ = q.mass_theta_ * kTwoPi;
    return q;
}

double AngularMeasure::mass_above(double delta) const {
    double lo = std::max(delta, theta_min_);
    if (lo >= kPi) return 0.0;
    switch (family_) {
        case AngularFamily::uniform:
            return mass_theta_ / (kPi - theta_min_) * (kPi - lo);
        case AngularFamily::maxwellian_power:
            if (lo <= 0.0) return mass_theta_;
            return 2.0 * coefficient_ *
                   (1.0 / std::sqrt(lo) - 1.0 / std::sqrt(kPi));
        case AngularFamily::custom_table: {
            double total = 0.0;
            for (std::size_t i = 0; i < density_.size(); ++i) {
                double a = std::max(edges_[i], lo);
                double b = edges_[i + 1];
                if (b > a) total += density_[i] * (b - a);
            }
            return total;
        }
    }
    return 0.0;
}

double AngularMeasure::quantile_theta(double u) const {
    if (!(mass_theta_ > 0.0) || !std::isfinite(mass_theta_)) {
        throw ConfigInvalid(
            "angular measure cannot be sampled: total mass is " +
            std::to_string(mass_theta_));
    }
    if (!(u >= 0.0) || !(u < 1.0)) {
        throw ConfigInvalid("quantile argument must lie in [0, 1)");
    }
    switch (family_) {
        case AngularFamily::uniform:
            return theta_min_ + u * (kPi - theta_min_);
        case AngularFamily::maxwellian_power: {
            double a = 1.0 / std::sqrt(theta_min_);
            double b = 1.0 / std::sqrt(kPi);
            double inv = a - u * (a - b);
            return 1.0 / (inv * inv);
        }
        case AngularFamily::custom_table: {
            double target = u * mass_theta_;
            // upper_bound skips past all cumulative entries equal to target,
            // so zero-mass cells are stepped over automatically.
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(),
                                       target);
            std::size_t cell = (it == cumulative_.end())
                                   ? density_.size() - 1
                                   : static_cast<std::size_t>(
                                         it - cumulative_.begin()) -
                                         1;
            double d = density_[cell];
            double theta =
                edges_[cell] + (d > 0.0 ? (target - cumulative_[cell]) / d : 0.0);
            return std::min(theta, edges_.back());
        }
    }
    return theta_min_;
}

double AngularMeasure::sample_theta(Rng& rng) const {
    return quantile_theta(rng.uniform());
}

CollisionAngles AngularMeasure::sample_angles(Rng& rng) const {
    CollisionAngles xi;
    xi.theta = quantile_theta(rng.uniform());
    xi.phi = kTwoPi * rng.uniform();
    return xi;
}

std::string AngularMeasure::family_name() const {
    switch (family_) {
        case AngularFamily::uniform: return "uniform";
        case AngularFamily::maxwellian_power: return "maxwellian_power";
        case AngularFamily::custom_table: return "custom_table";
    }
    return "unknown";
}

AngularMoments angular_moments(const AngularMeasure& q) {
    const AngularMoments& m = q.moments();
    if (!std::isfinite(m.m1) || !std::isfinite(m.m2) ||
        !std::isfinite(m.mtheta)) {
        throw NonIntegrable("angular moment diverges for these parameters");
    }
    return m;
}

SpeedFactor SpeedFactor::constant_one() {
    SpeedFactor s;
    s.family_ = SpeedFamily::constant_one;
    s.lipschitz_bound_ = 0.0;
    return s;
}

SpeedFactor SpeedFactor::smooth_saturating(double slope) {
    if (!(slope > 0.0) || !std::isfinite(slope)) {
        throw ConfigInvalid("smooth_saturating needs a finite slope > 0");
    }
    SpeedFactor s;
    s.family_ = SpeedFamily::smooth_saturating;
    s.slope_ = slope;
    s.lipschitz_bound_ = slope;
    return s;
}

SpeedFactor SpeedFactor::custom(std::function<double(double)> fn,
                                double lipschitz_bound) {
    if (!fn) throw ConfigInvalid("custom speed factor needs a function");
    if (!(lipschitz_bound >= 0.0)) {
        throw ConfigInvalid("lipschitz_bound must be >= 0");
    }
    SpeedFactor s;
    s.family_ = SpeedFamily::custom;
    s.fn_ = std::move(fn);
    s.lipschitz_bound_ = lipschitz_bound;
    return s;
}

double SpeedFactor::operator()(double r) const {
    switch (family_) {
        case SpeedFamily::constant_one: return 1.0;
        case SpeedFamily::smooth_saturating: return std::tanh(slope_ * r);
        case SpeedFamily::custom: return fn_(r);
    }
    return 1.0;
}

std::string SpeedFactor::family_name() const {
    switch (family_) {
        case SpeedFamily::constant_one: return "constant_one";
        case SpeedFamily::smooth_saturating: return "smooth_saturating";
        case SpeedFamily::custom: return "custom";
    }
    return "unknown";
}

double evaluate_sigma(const SpeedFactor& s, double r) { return s(r); }

Mollifier Mollifier::bump(double support_radius) {
    if (!(support_radius > 0.0)) {
        throw ConfigInvalid("mollifier support_radius must be > 0");
    }
    Mollifier b;
    b.shape_ = MollifierShape::bump;
    b.support_radius_ = support_radius;
    return b;
}

Mollifier Mollifier::cosine_taper(double support_radius) {
    Mollifier b = bump(support_radius);
    b.shape_ = MollifierShape::cosine_taper;
    return b;
}

double Mollifier::operator()(double r) const {
    if (!std::isfinite(support_radius_)) return 1.0;
    if (r >= support_radius_) return 0.0;
    double x = r / support_radius_;
    switch (shape_) {
        case MollifierShape::bump:
            return std::exp(1.0 - 1.0 / (1.0 - x * x));
        case MollifierShape::cosine_taper:
            return 0.5 * (1.0 + std::cos(kPi * x));
    }
    return 0.0;
}

std::string Mollifier::shape_name() const {
    switch (shape_) {
        case MollifierShape::bump: return "bump";
        case MollifierShape::cosine_taper: return "cosine_taper";
    }
    return "unknown";
}

double evaluate_beta(const Mollifier& b, double r) { return b(r); }

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    out << "hypotheses: " << (passed ? "PASS" : "FAIL") << "\n";
    for (const auto& v : violations) out << "  violation: " << v << "\n";
    for (const auto& n : notes) out << "  note: " << n << "\n";
    return out.str();
}

ValidationReport validate_hypotheses(const AngularMeasure& q,
                                     const SpeedFactor& s,
                                     const Mollifier& b) {
    ValidationReport report;
    auto fail = [&report](const std::string& msg) {
        report.passed = false;
        report.violations.push_back(msg);
    };

    if (!std::isfinite(q.moments().mtheta)) {
        fail("A1: theta moment of Q diverges");
    }
    for (double delta : {1e-6, 1e-3, 0.1, 1.0}) {
        if (!std::isfinite(q.mass_above(delta))) {
            std::ostringstream msg;
            msg << "A1: Q mass infinite outside neighborhood (delta=" << delta
                << ")";
            fail(msg.str());
            break;
        }
    }

    constexpr int kGrid = 10000;
    constexpr double kRMax = 100.0;
    double prev = 0.0;
    double max_slope = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        double r = kRMax * i / (kGrid - 1);
        double v = s(r);
        if (!(v >= 0.0) || !(v <= 1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "A2: sigma(" << r << ") = " << v << " outside [0, 1]";
            fail(msg.str());
            break;
        }
        if (i > 0) {
            double slope = std::abs(v - prev) / (kRMax / (kGrid - 1));
            max_slope = std::max(max_slope, slope);
        }
        prev = v;
    }
    if (max_slope > s.lipschitz_bound() * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "A2: empirical Lipschitz constant " << max_slope
            << " exceeds declared bound " << s.lipschitz_bound();
        fail(msg.str());
    }

    double radius = b.support_radius();
    if (std::isfinite(radius)) {
        for (int i = 0; i < kGrid; ++i) {
            double r = radius * i / (kGrid - 1);
            double v = b(r);
            if (!(v >= 0.0) || !(v <= 1.0 + 1e-12)) {
                std::ostringstream msg;
                msg << "beta(" << r << ") = " << v << " outside [0, 1]";
                fail(msg.str());
                break;
            }
        }
        for (double r : {radius, 1.5 * radius, radius + 1.0}) {
            if (b(r) != 0.0) {
                std::ostringstream msg;
                msg << "beta positive at r = " << r << " beyond support radius "
                    << radius;
                fail(msg.str());
                break;
            }
        }
    } else {
        report.notes.push_back(
            "beta has infinite support radius: no spatial thinning, "
            "compact-support check vacuous");
    }
    return report;
}

}  // namespace enskog
