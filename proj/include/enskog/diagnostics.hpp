#pragma once
// Statistical checks on simulator output: a pre/post collision moment
// identity, invariance of the standard normal velocity law, a weak-form
// residual against the jump generator, and closeness of marginals from
// independent runs. Every check reduces to z-scores against explicit
// thresholds so a report reads the same way regardless of the test.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "enskog/ensemble.hpp"
#include "enskog/kernels.hpp"
#include "enskog/simulator.hpp"
#include "enskog/testfunction.hpp"

namespace enskog {

struct DiagnosticsReport {
    std::string test;
    double statistic = 0.0;       // worst z-score (or folded equivalent)
    double standard_error = 0.0;  // SE behind the worst comparison
    double threshold = 0.0;       // pass iff statistic <= threshold
    bool pass = false;
    std::size_t replicate_count = 0;
    std::vector<std::string> details;

    std::string to_string() const;
};

// Pre/post collision identity: with velocities and partners drawn from the
// standard normal law and angles from the normalized angular measure, the
// sigma-weighted characteristic function of the outgoing velocity matches
// the incoming one. Compares paired sample means over a fixed frequency
// grid with a familywise 3-sigma threshold.
DiagnosticsReport tanaka_identity(const AngularMeasure& q,
                                  const SpeedFactor& sigma,
                                  std::size_t sample_count,
                                  std::uint64_t seed);

// Checks that velocity marginals of a finished run stay standard normal at
// the given times: component means, covariance entries, mean squared speed,
// the empirical characteristic function on an axis grid, and per-component
// KS at the 1% level (folded into the same z-scale).
DiagnosticsReport maxwellian_invariance(const Ensemble& law,
                                        const std::vector<double>& times);

// Weak-form residual at time t0: a centered finite difference of the
// ensemble mean of psi minus the transport term minus a double Monte Carlo
// estimate of the jump-generator term. Passes when the residual sits within
// 3 combined standard errors plus the Richardson-estimated dt^2 bias, at
// both dt and dt/2.
DiagnosticsReport weak_form_residual(const Ensemble& law,
                                     const KernelSet& kernels,
                                     const TestFunction& psi, double t0,
                                     double dt, std::uint64_t seed);

// Compares the marginals of two runs at the given times against a
// split-half null built from the first run; one-sided at 3 sigma. Two runs
// of the same configuration should pass, materially different dynamics
// should not.
DiagnosticsReport marginal_uniqueness(const Ensemble& a, const Ensemble& b,
                                      const std::vector<double>& times,
                                      int dictionary_size = 64);

}  // namespace enskog
