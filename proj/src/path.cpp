#include "enskog/path.hpp"

#include <algorithm>

#include "enskog/errors.hpp"

namespace enskog {

ParticlePath::ParticlePath(const ParticleState& initial) : initial_(initial) {
    initial_.last_event_time = 0.0;
}

void ParticlePath::add_event(double time, const Vec3& new_velocity) {
    double prev_time = events_.empty() ? 0.0 : events_.back().time;
    if (!(time > prev_time)) {
        throw ConfigInvalid("path event times must increase strictly");
    }
    Vec3 prev_pos = events_.empty() ? initial_.position : event_positions_.back();
    Vec3 prev_vel = events_.empty() ? initial_.velocity
                                    : events_.back().new_velocity;
    event_positions_.push_back(prev_pos + prev_vel * (time - prev_time));
    events_.push_back(PathEvent{time, new_velocity});
}

ParticleState ParticlePath::state_at(double t) const {
    if (!(t >= 0.0)) {
        throw TimeOutOfRange("path evaluation requires t >= 0");
    }
    // Last event with time <= t; upper_bound yields the first one after t.
    auto it = std::upper_bound(
        events_.begin(), events_.end(), t,
        [](double value, const PathEvent& e) { return value < e.time; });
    ParticleState out;
    if (it == events_.begin()) {
        out.position = initial_.position + initial_.velocity * t;
        out.velocity = initial_.velocity;
        out.last_event_time = 0.0;
        return out;
    }
    std::size_t k = static_cast<std::size_t>(it - events_.begin()) - 1;
    out.position = event_positions_[k] + events_[k].new_velocity *
                                             (t - events_[k].time);
    out.velocity = events_[k].new_velocity;
    out.last_event_time = events_[k].time;
    return out;
}

}  // namespace enskog
