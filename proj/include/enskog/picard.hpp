#pragma once
// Fixed-point iteration on the law: start from the ballistic law of the
// initial condition, then repeatedly simulate fresh paths against the
// frozen previous law, tracking second moments and the dictionary distance
// between successive laws.

#include <cstddef>
#include <vector>

#include "enskog/law_distance.hpp"
#include "enskog/simulator.hpp"

namespace enskog {

struct MomentPoint {
    double time = 0.0;
    double moment2 = 0.0;  // ensemble mean of |Z|^2
    double standard_error = 0.0;
};

struct DistancePoint {
    double time = 0.0;
    LawDistance distance;
};

struct IterationState {
    int index = 0;
    Ensemble law;  // frozen_paths over [0, T]
    std::vector<MomentPoint> moment2_trace;          // at the output times
    std::vector<DistancePoint> distance_to_previous; // empty for index 0
};

struct PicardOptions {
    // Template run configuration; mode is forced to frozen, and each iterate
    // reseeds with a seed derived from base.master_seed and the iterate
    // index (or keeps it fixed under common random numbers).
    SimConfig base;
    std::size_t max_iters = 10;
    double tol = 0.05;
    int dictionary_size = 64;
    // Reuse one derived seed for every iterate: initial draws and candidate
    // schedules repeat, only the frozen law changes.
    bool common_random_numbers = false;
};

struct PicardRun {
    std::vector<IterationState> states;  // index 0 .. iterations
    bool converged = false;
    std::size_t iterations = 0;
    // Split-half same-law distance of the initial ensemble, maximized over
    // output times; tolerances at or below it are refused.
    double noise_floor = 0.0;
};

// Ballistic law of the initial condition: paths with no events.
IterationState initial_law(const SimConfig& cfg);

// One step: simulate cfg.particle_count fresh paths against prev.law.
IterationState iterate(const IterationState& prev, const SimConfig& cfg,
                       int dictionary_size = 64);

// Iterates until the distance to the previous law drops below tol at every
// output time, or max_iters is reached (reported, not thrown). Throws
// NoiseFloorRefusal when tol is at or below the estimated noise floor.
PicardRun run_to_tolerance(const PicardOptions& opts);

struct MomentEnvelope {
    double scale = 0.0;   // A in the fitted bound A * exp(B t)
    double growth = 0.0;  // B, clamped to >= 0
    double headroom = 1.2;
    bool ok = true;  // every later iterate stays below headroom * fit
    std::vector<std::string> details;
};

// Fits A * exp(B t) to the pooled moment traces of iterates 1 and 2 by
// least squares in log space, then checks every subsequent iterate against
// headroom * fit at each output time.
MomentEnvelope moment_envelope(const std::vector<IterationState>& states,
                               double headroom = 1.2);

}  // namespace enskog
