#include "enskog/ensemble.hpp"

#include "enskog/errors.hpp"

namespace enskog {

void Ensemble::validate() const {
    bool has_states = !states.empty();
    bool has_paths = !paths.empty();
    if (!has_states && !has_paths) {
        throw ConfigInvalid("ensemble must be nonempty");
    }
    if (has_states && has_paths) {
        throw ConfigInvalid("ensemble kind must be homogeneous");
    }
    if ((kind == EnsembleKind::states_at_time) != has_states) {
        throw ConfigInvalid("ensemble kind does not match stored members");
    }
    if (!(time_horizon >= 0.0)) {
        throw ConfigInvalid("ensemble horizon must be >= 0");
    }
}

std::vector<ParticleState> marginal_at(const Ensemble& e, double t) {
    e.validate();
    if (e.kind == EnsembleKind::states_at_time) {
        if (t != e.time_horizon) {
            throw TimeOutOfRange(
                "state ensemble is only defined at its snapshot time");
        }
        return e.states;
    }
    if (!(t >= 0.0) || !(t <= e.time_horizon)) {
        throw TimeOutOfRange("marginal time outside [0, horizon]");
    }
    std::vector<ParticleState> out;
    out.reserve(e.paths.size());
    for (const auto& p : e.paths) out.push_back(p.state_at(t));
    return out;
}

Ensemble resample(const Ensemble& e, std::size_t count, Rng& rng) {
    e.validate();
    if (count == 0) {
        throw EmptyRequest("resample asked for zero members");
    }
    Ensemble out;
    out.kind = e.kind;
    out.time_horizon = e.time_horizon;
    out.seed_lineage = e.seed_lineage;
    out.seed_lineage.push_back(rng.stream());
    std::size_t n = e.size();
    if (e.kind == EnsembleKind::states_at_time) {
        out.states.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.states.push_back(e.states[rng.uniform_index(n)]);
        }
    } else {
        out.paths.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.paths.push_back(e.paths[rng.uniform_index(n)]);
        }
    }
    return out;
}

}  // namespace enskog
