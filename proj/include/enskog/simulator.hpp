#pragma once
// Event-driven simulation of the interacting jump system. Each particle
// carries a Poisson candidate clock of rate Lambda = total_rate of the
// angular measure; a candidate at time s draws a partner, collision angles
// and an acceptance variable, and applies the velocity jump iff
// r <= sigma(|Z- - v|) * beta(|X - y|). Positions evolve exactly
// ballistically between events; there is no time discretization anywhere.
//
// mean_field: partners are the other N-1 particles, evaluated at s from
// their last event. Sequential in event time.
// frozen: partners are drawn from a stored path ensemble; particles are
// independent, so paths run in parallel with per-particle substreams.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "enskog/collision.hpp"
#include "enskog/ensemble.hpp"
#include "enskog/kernels.hpp"

namespace enskog {

enum class SimMode { mean_field, frozen };
enum class PartnerUpdate { one_sided, symmetric };

struct KernelSet {
    AngularMeasure q;
    SpeedFactor sigma;
    Mollifier beta;
};

// Per-particle initial draws; position is drawn before velocity.
struct InitialLaw {
    std::string position_name = "gaussian";
    std::string velocity_name = "maxwellian";
    std::function<Vec3(Rng&)> position;
    std::function<Vec3(Rng&)> velocity;

    // Z ~ MVN(0, I), X ~ MVN(0, I).
    static InitialLaw defaults();
    // Velocity (+s, 0, 0) or (-s, 0, 0) with probability 1/2 each.
    static InitialLaw two_point_velocity(double speed);
};

struct SimConfig {
    SimMode mode = SimMode::mean_field;
    // Particle count N (mean_field needs N >= 2) or path budget M (frozen).
    std::size_t particle_count = 10000;
    double horizon = 2.0;
    KernelSet kernels;
    InitialLaw initial = InitialLaw::defaults();
    PartnerUpdate partner_update = PartnerUpdate::one_sided;
    std::optional<int> truncation_level;
    std::vector<double> output_times;  // strictly increasing, within [0, T]
    std::uint64_t master_seed = 0;
    // Upper bound on the expected candidate count Lambda * T * N.
    double event_budget = 5e8;

    // Structural checks; throws ConfigInvalid / RateOverflow.
    void validate() const;
};

// One candidate, accepted or not. partner_* is the partner state at the
// candidate time before any update; accepted => delta_v is the velocity
// change applied to the tagged particle, rejected => delta_v = 0.
struct JumpEvent {
    double time = 0.0;
    std::size_t particle_index = 0;
    Vec3 partner_position;
    Vec3 partner_velocity;
    CollisionAngles angles;
    bool accepted = false;
    Vec3 delta_v;
};

struct StoppingReport {
    std::optional<double> tau;  // first time the speed exceeds the level
    int level = 0;
};

struct SimResult {
    Ensemble paths;  // frozen_paths kind, one member per particle
    std::vector<JumpEvent> events;  // all candidates, in time order
    std::vector<StoppingReport> stopping;  // per particle, truncated runs only
    std::uint64_t candidate_count = 0;
    std::uint64_t accepted_count = 0;
};

// Runs the configured system. frozen mode requires a frozen_paths ensemble
// with horizon >= cfg.horizon; kernels must pass validate_hypotheses.
SimResult simulate(const SimConfig& cfg, const Ensemble* frozen_law = nullptr);

// First time the path speed exceeds the level: the initial state counts
// (tau = 0 if |Z_0| > level), then post-jump speeds in event order.
StoppingReport detect_stopping(const ParticlePath& path, int level);

}  // namespace enskog
