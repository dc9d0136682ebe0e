#include "enskog/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "enskog/errors.hpp"
#include "enskog/stats.hpp"

namespace enskog {
namespace {

constexpr std::uint32_t kIterateTag = 0x50494352u;  // per-iterate seed domain

std::vector<MomentPoint> moment_trace(const Ensemble& law,
                                      const std::vector<double>& times) {
    std::vector<MomentPoint> trace;
    trace.reserve(times.size());
    for (double t : times) {
        auto states = marginal_at(law, t);
        std::vector<double> w(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            w[i] = norm_sq(states[i].velocity);
        }
        MomentPoint p;
        p.time = t;
        p.moment2 = mean(w);
        p.standard_error = standard_error(w);
        trace.push_back(p);
    }
    return trace;
}

Ensemble member_range(const Ensemble& law, std::size_t begin,
                      std::size_t end) {
    Ensemble out;
    out.kind = EnsembleKind::frozen_paths;
    out.time_horizon = law.time_horizon;
    out.seed_lineage = law.seed_lineage;
    out.paths.assign(law.paths.begin() + begin, law.paths.begin() + end);
    return out;
}

double split_half_floor(const Ensemble& law, const std::vector<double>& times,
                        int dictionary_size) {
    std::size_t half = law.size() / 2;
    Ensemble a = member_range(law, 0, half);
    Ensemble b = member_range(law, half, law.size());
    double floor = 0.0;
    for (double t : times) {
        floor = std::max(floor, law_distance(a, b, t, dictionary_size).value);
    }
    return floor;
}

}  // namespace

IterationState initial_law(const SimConfig& cfg) {
    cfg.validate();
    if (cfg.particle_count < 2) {
        throw ConfigInvalid("initial law needs at least 2 members");
    }
    IterationState state;
    state.index = 0;
    state.law.kind = EnsembleKind::frozen_paths;
    state.law.time_horizon = cfg.horizon;
    state.law.seed_lineage = {cfg.master_seed};
    state.law.paths.reserve(cfg.particle_count);
    for (std::size_t i = 0; i < cfg.particle_count; ++i) {
        Rng init(cfg.master_seed, StreamDomain::init, i);
        ParticleState s0;
        s0.position = cfg.initial.position(init);
        s0.velocity = cfg.initial.velocity(init);
        s0.last_event_time = 0.0;
        state.law.paths.emplace_back(s0);
    }
    state.moment2_trace = moment_trace(state.law, cfg.output_times);
    return state;
}

IterationState iterate(const IterationState& prev, const SimConfig& cfg,
                       int dictionary_size) {
    SimConfig step = cfg;
    step.mode = SimMode::frozen;
    SimResult result = simulate(step, &prev.law);

    IterationState next;
    next.index = prev.index + 1;
    next.law = std::move(result.paths);
    next.moment2_trace = moment_trace(next.law, step.output_times);
    next.distance_to_previous.reserve(step.output_times.size());
    for (double t : step.output_times) {
        DistancePoint d;
        d.time = t;
        d.distance = law_distance(next.law, prev.law, t, dictionary_size);
        next.distance_to_previous.push_back(d);
    }
    return next;
}

PicardRun run_to_tolerance(const PicardOptions& opts) {
    SimConfig base = opts.base;
    base.mode = SimMode::frozen;
    if (base.output_times.empty()) {
        throw ConfigInvalid("picard needs at least one output time");
    }
    if (!(opts.tol > 0.0)) {
        throw ConfigInvalid("picard tolerance must be > 0");
    }
    if (opts.max_iters < 1) {
        throw ConfigInvalid("picard needs max_iters >= 1");
    }

    PicardRun run;
    IterationState s0 = initial_law(base);
    run.noise_floor =
        split_half_floor(s0.law, base.output_times, opts.dictionary_size);
    if (opts.tol <= run.noise_floor) {
        std::ostringstream msg;
        msg << "tolerance " << opts.tol
            << " is at or below the Monte Carlo noise floor "
            << run.noise_floor << " estimated from a split-half null at "
            << base.particle_count
            << " members; raise tol or increase the member count";
        throw NoiseFloorRefusal(msg.str());
    }
    run.states.push_back(std::move(s0));

    for (std::size_t n = 1; n <= opts.max_iters; ++n) {
        SimConfig cfg = base;
        std::uint64_t pick = opts.common_random_numbers ? 1 : n;
        cfg.master_seed = derive_seed(base.master_seed, kIterateTag, pick);
        IterationState next =
            iterate(run.states.back(), cfg, opts.dictionary_size);
        double worst = 0.0;
        for (const auto& d : next.distance_to_previous) {
            worst = std::max(worst, d.distance.value);
        }
        run.states.push_back(std::move(next));
        run.iterations = n;
        if (worst < opts.tol) {
            run.converged = true;
            break;
        }
    }
    return run;
}

MomentEnvelope moment_envelope(const std::vector<IterationState>& states,
                               double headroom) {
    MomentEnvelope env;
    env.headroom = headroom;
    if (states.size() < 3) {
        throw ConfigInvalid(
            "moment envelope needs at least two completed iterates");
    }

    // Least squares of log(m) on t over the pooled traces of iterates 1, 2.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t idx = 1; idx <= 2; ++idx) {
        for (const auto& p : states[idx].moment2_trace) {
            double y = std::log(std::max(p.moment2, 1e-300));
            sx += p.time;
            sy += y;
            sxx += p.time * p.time;
            sxy += p.time * y;
            ++count;
        }
    }
    double denom = count * sxx - sx * sx;
    double slope = denom > 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
    if (slope < 0.0) slope = 0.0;  // envelopes never decay
    // Refit the intercept with the clamped slope.
    double intercept = (sy - slope * sx) / static_cast<double>(count);
    env.growth = slope;
    env.scale = std::exp(intercept);

    for (std::size_t idx = 3; idx < states.size(); ++idx) {
        for (const auto& p : states[idx].moment2_trace) {
            double bound = headroom * env.scale * std::exp(env.growth * p.time);
            std::ostringstream line;
            line << "n=" << states[idx].index << " t=" << p.time
                 << " moment2=" << p.moment2 << " bound=" << bound;
            if (!(p.moment2 <= bound)) {
                env.ok = false;
                line << " EXCEEDED";
            }
            env.details.push_back(line.str());
        }
    }
    return env;
}

}  // namespace enskog
