#pragma once
// Collision kernel components: the angular measure Q(dtheta) x dphi, the
// speed factor sigma, and the spatial mollifier beta. A candidate event
// carries total rate mass_theta * 2*pi per particle; acceptance multiplies
// sigma(relative speed) by beta(pair distance).

#include <functional>
#include <string>
#include <vector>

#include "enskog/collision.hpp"
#include "enskog/rng.hpp"

namespace enskog {

enum class AngularFamily { uniform, maxwellian_power, custom_table };

struct AngularMoments {
    double m1 = 0.0;      // integral of sin(theta/2) Q(dtheta)
    double m2 = 0.0;      // integral of sin^2(theta/2) Q(dtheta)
    double mtheta = 0.0;  // integral of theta Q(dtheta)
};

// Finite measure on (theta_min, pi]. Construction precomputes mass and the
// low-order moments; sampling uses the inverse CDF so that a single uniform
// draw maps deterministically to one angle.
class AngularMeasure {
public:
    // Zero-mass measure (ballistic limit); same as uniform(0.0).
    AngularMeasure() = default;

    // Total mass `mass` spread evenly over (theta_min, pi]. mass = 0 is the
    // ballistic limit: no candidate events, sampling disallowed.
    static AngularMeasure uniform(double mass, double theta_min = 0.0);

    // Density c * theta^(-3/2) on (theta_min, pi]. mass_theta diverges as
    // theta_min -> 0 while m1, m2, mtheta stay finite; theta_min = 0 is
    // constructible for moment queries but cannot be sampled.
    static AngularMeasure maxwellian_power(double coefficient, double theta_min);

    // Piecewise-constant density: density[i] on [edges[i], edges[i+1]).
    static AngularMeasure custom_table(std::vector<double> edges,
                                       std::vector<double> density);

    AngularFamily family() const { return family_; }
    double theta_min() const { return theta_min_; }
    double mass_theta() const { return mass_theta_; }      // Q((theta_min, pi])
    double total_rate() const { return total_rate_; }      // mass_theta * 2*pi
    const AngularMoments& moments() const { return moments_; }

    // Mass above a strictly positive angle, Q((delta, pi]). Finite for every
    // delta > 0 even when mass_theta itself is infinite.
    double mass_above(double delta) const;

    // Inverse CDF of the normalized theta marginal, u in [0, 1).
    double quantile_theta(double u) const;

    double sample_theta(Rng& rng) const;
    // Draw order is fixed: theta first, then phi ~ Uniform[0, 2*pi).
    CollisionAngles sample_angles(Rng& rng) const;

    std::string family_name() const;

private:
    AngularFamily family_ = AngularFamily::uniform;
    double theta_min_ = 0.0;
    double mass_theta_ = 0.0;
    double total_rate_ = 0.0;
    double coefficient_ = 0.0;  // maxwellian_power density scale
    AngularMoments moments_;
    // custom_table data; cumulative_[i] = mass of cells 0..i-1.
    std::vector<double> edges_;
    std::vector<double> density_;
    std::vector<double> cumulative_;
};

// Moments of q, by closed form where available and adaptive quadrature
// otherwise. Throws NonIntegrable if any moment fails to be finite.
AngularMoments angular_moments(const AngularMeasure& q);

enum class SpeedFamily { constant_one, smooth_saturating, custom };

// Velocity-dependent acceptance factor, bounded by 1 and Lipschitz with a
// declared constant that validate_hypotheses checks empirically.
class SpeedFactor {
public:
    // Defaults to the constant factor 1.
    SpeedFactor() = default;

    static SpeedFactor constant_one();
    // sigma(r) = tanh(slope * r); Lipschitz constant is the slope.
    static SpeedFactor smooth_saturating(double slope);
    static SpeedFactor custom(std::function<double(double)> fn,
                              double lipschitz_bound);

    SpeedFamily family() const { return family_; }
    double lipschitz_bound() const { return lipschitz_bound_; }
    double operator()(double r) const;
    std::string family_name() const;

private:
    SpeedFamily family_ = SpeedFamily::constant_one;
    double slope_ = 1.0;
    double lipschitz_bound_ = 0.0;
    std::function<double(double)> fn_;
};

double evaluate_sigma(const SpeedFactor& s, double r);

enum class MollifierShape { bump, cosine_taper };

// Spatial acceptance factor: beta(0) = 1, beta = 0 at and beyond the support
// radius. An infinite radius makes beta identically 1 (no spatial thinning).
class Mollifier {
public:
    // Defaults to a bump of radius 0.5.
    Mollifier() = default;

    static Mollifier bump(double support_radius);
    static Mollifier cosine_taper(double support_radius);

    MollifierShape shape() const { return shape_; }
    double support_radius() const { return support_radius_; }
    double operator()(double r) const;
    std::string shape_name() const;

private:
    MollifierShape shape_ = MollifierShape::bump;
    double support_radius_ = 0.5;
};

double evaluate_beta(const Mollifier& b, double r);

struct ValidationReport {
    bool passed = true;
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    std::string to_string() const;
};

// Checks the standing assumptions on a kernel triple: finite theta moment
// and finite mass outside every neighborhood of zero; sigma bounded by 1
// with empirical Lipschitz constant (10^4-point grid over [0, 100]) within
// the declared bound; beta bounded by 1 and vanishing beyond its support.
ValidationReport validate_hypotheses(const AngularMeasure& q,
                                     const SpeedFactor& s,
                                     const Mollifier& b);

}  // namespace enskog
