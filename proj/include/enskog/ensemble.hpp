#pragma once
// Finite representations of a velocity-position law: a cloud of states
// frozen at one time, or a set of full event paths evaluable anywhere on
// [0, horizon]. Ensembles are immutable once built; reads are safe from any
// thread.

#include <cstdint>
#include <vector>

#include "enskog/path.hpp"
#include "enskog/rng.hpp"

namespace enskog {

enum class EnsembleKind { states_at_time, frozen_paths };

struct Ensemble {
    EnsembleKind kind = EnsembleKind::states_at_time;
    std::vector<ParticleState> states;  // populated when kind = states_at_time
    std::vector<ParticlePath> paths;    // populated when kind = frozen_paths
    // Snapshot time for states_at_time; path domain endpoint otherwise.
    double time_horizon = 0.0;
    std::vector<std::uint64_t> seed_lineage;

    std::size_t size() const {
        return kind == EnsembleKind::states_at_time ? states.size()
                                                    : paths.size();
    }

    // Nonempty and of homogeneous kind; throws ConfigInvalid otherwise.
    void validate() const;
};

// Exact member states at time t. For a states_at_time ensemble t must equal
// the snapshot time; for frozen paths any t in [0, horizon] works.
std::vector<ParticleState> marginal_at(const Ensemble& e, double t);

// Uniform-with-replacement draw of count members; the output lineage is the
// input lineage extended by the drawing stream's id.
Ensemble resample(const Ensemble& e, std::size_t count, Rng& rng);

}  // namespace enskog
