#pragma once
// Piecewise-ballistic particle trajectories. Velocity is piecewise constant
// and jumps at event times; position integrates it exactly, so evaluation at
// any time is closed-form with no discretization error. Paths are stored as
// (initial state, event list); event positions are derived once, in event
// order, which makes evaluation bitwise-reproducible including after a
// serialization round trip.

#include <cstddef>
#include <vector>

#include "enskog/vec3.hpp"

namespace enskog {

struct ParticleState {
    Vec3 position;
    Vec3 velocity;
    double last_event_time = 0.0;
};

struct PathEvent {
    double time = 0.0;
    Vec3 new_velocity;
};

class ParticlePath {
public:
    ParticlePath() = default;
    explicit ParticlePath(const ParticleState& initial);

    const ParticleState& initial() const { return initial_; }
    const std::vector<PathEvent>& events() const { return events_; }
    std::size_t event_count() const { return events_.size(); }

    // Event times must increase strictly; throws ConfigInvalid otherwise.
    void add_event(double time, const Vec3& new_velocity);

    // Exact state at t >= 0, right-continuous at event times: the state at
    // an event time carries the post-jump velocity.
    ParticleState state_at(double t) const;

    // Derived position at the k-th event time.
    const Vec3& event_position(std::size_t k) const { return event_positions_[k]; }

private:
    ParticleState initial_;
    std::vector<PathEvent> events_;
    std::vector<Vec3> event_positions_;
};

}  // namespace enskog
