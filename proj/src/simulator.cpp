#include "enskog/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "enskog/errors.hpp"
#include "enskog/threadpool.hpp"

namespace enskog {

InitialLaw InitialLaw::defaults() {
    InitialLaw law;
    law.position = [](Rng& rng) { return rng.normal3(); };
    law.velocity = [](Rng& rng) { return rng.normal3(); };
    return law;
}

InitialLaw InitialLaw::two_point_velocity(double speed) {
    InitialLaw law = defaults();
    law.velocity_name = "two_point";
    law.velocity = [speed](Rng& rng) {
        double s = rng.uniform() < 0.5 ? speed : -speed;
        return Vec3{s, 0.0, 0.0};
    };
    return law;
}

void SimConfig::validate() const {
    if (particle_count < 1) {
        throw ConfigInvalid("particle count must be >= 1");
    }
    if (mode == SimMode::mean_field && particle_count < 2) {
        throw ConfigInvalid("mean_field mode needs at least 2 particles");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ConfigInvalid("horizon must be positive and finite");
    }
    if (!std::isfinite(kernels.q.total_rate())) {
        throw ConfigInvalid(
            "candidate rate is infinite: angular mass diverges at this cutoff");
    }
    if (truncation_level && *truncation_level < 1) {
        throw ConfigInvalid("truncation level must be >= 1");
    }
    if (partner_update == PartnerUpdate::symmetric && mode == SimMode::frozen) {
        throw ConfigInvalid("symmetric partner update requires mean_field mode");
    }
    double prev = -1.0;
    for (double t : output_times) {
        if (!(t >= 0.0) || !(t <= horizon)) {
            throw ConfigInvalid("output times must lie within [0, horizon]");
        }
        if (!(t > prev)) {
            throw ConfigInvalid("output times must increase strictly");
        }
        prev = t;
    }
    if (!initial.position || !initial.velocity) {
        throw ConfigInvalid("initial law samplers are missing");
    }
    double expected =
        kernels.q.total_rate() * horizon * static_cast<double>(particle_count);
    if (expected > event_budget) {
        std::ostringstream msg;
        msg << "expected candidate count " << expected
            << " exceeds the event budget " << event_budget;
        throw RateOverflow(msg.str());
    }
}

namespace {

ParticleState draw_initial(const SimConfig& cfg, std::size_t i) {
    Rng init(cfg.master_seed, StreamDomain::init, i);
    ParticleState s0;
    s0.position = cfg.initial.position(init);
    s0.velocity = cfg.initial.velocity(init);
    s0.last_event_time = 0.0;
    return s0;
}

Vec3 jump_delta(const SimConfig& cfg, const Vec3& z, const Vec3& v,
                const CollisionAngles& xi) {
    Vec3 a = cfg.truncation_level
                 ? alpha_truncated(z, v, xi, *cfg.truncation_level)
                 : alpha(z, v, xi);
    return -a;
}

void finalize(const SimConfig& cfg, std::vector<ParticlePath>&& paths,
              SimResult& out) {
    if (cfg.truncation_level) {
        out.stopping.reserve(paths.size());
        for (const auto& p : paths) {
            out.stopping.push_back(detect_stopping(p, *cfg.truncation_level));
        }
    }
    out.paths.kind = EnsembleKind::frozen_paths;
    out.paths.time_horizon = cfg.horizon;
    out.paths.seed_lineage = {cfg.master_seed};
    out.paths.paths = std::move(paths);
    for (const auto& ev : out.events) {
        if (ev.accepted) ++out.accepted_count;
    }
    out.candidate_count = out.events.size();
}

SimResult simulate_mean_field(const SimConfig& cfg) {
    const std::size_t n = cfg.particle_count;
    const double lambda = cfg.kernels.q.total_rate();
    const double horizon = cfg.horizon;

    SimResult out;
    std::vector<ParticleState> cur(n);
    std::vector<ParticlePath> paths;
    std::vector<Rng> streams;
    paths.reserve(n);
    streams.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        cur[i] = draw_initial(cfg, i);
        paths.emplace_back(cur[i]);
        streams.emplace_back(cfg.master_seed, StreamDomain::particle, i);
    }

    // Min-heap of candidate times; ties broken by particle index. The loop
    // is sequential in event time by contract.
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> clock;
    for (std::size_t i = 0; i < n; ++i) {
        clock.push({streams[i].exponential(lambda), i});
    }

    while (!clock.empty()) {
        auto [s, i] = clock.top();
        clock.pop();
        if (!(s <= horizon)) continue;  // particle retired
        Rng& rng = streams[i];

        // Fixed per-candidate draw order: partner, theta, phi, r.
        std::size_t pick = rng.uniform_index(n - 1);
        std::size_t j = pick >= i ? pick + 1 : pick;
        CollisionAngles xi = cfg.kernels.q.sample_angles(rng);
        double r = rng.uniform();

        Vec3 x_i = cur[i].position +
                   cur[i].velocity * (s - cur[i].last_event_time);
        Vec3 y = cur[j].position +
                 cur[j].velocity * (s - cur[j].last_event_time);
        Vec3 z = cur[i].velocity;
        Vec3 v = cur[j].velocity;

        JumpEvent ev;
        ev.time = s;
        ev.particle_index = i;
        ev.partner_position = y;
        ev.partner_velocity = v;
        ev.angles = xi;

        double accept_p =
            cfg.kernels.sigma(norm(z - v)) * cfg.kernels.beta(norm(x_i - y));
        if (r <= accept_p) {
            Vec3 delta = jump_delta(cfg, z, v, xi);
            ev.accepted = true;
            ev.delta_v = delta;
            cur[i].position = x_i;
            cur[i].velocity = z + delta;
            cur[i].last_event_time = s;
            paths[i].add_event(s, cur[i].velocity);
            if (cfg.partner_update == PartnerUpdate::symmetric) {
                cur[j].position = y;
                cur[j].velocity = v - delta;
                cur[j].last_event_time = s;
                paths[j].add_event(s, cur[j].velocity);
            }
        }
        out.events.push_back(ev);
        clock.push({s + rng.exponential(lambda), i});
    }

    finalize(cfg, std::move(paths), out);
    return out;
}

SimResult simulate_frozen(const SimConfig& cfg, const Ensemble& law) {
    const std::size_t n = cfg.particle_count;
    const std::size_t m = law.size();
    const double lambda = cfg.kernels.q.total_rate();
    const double horizon = cfg.horizon;

    std::vector<ParticlePath> paths(n);
    std::vector<std::vector<JumpEvent>> per_particle(n);

    // Paths are mutually independent given the frozen law; each works off
    // its own substreams, so the schedule below is free to run them in any
    // order on any number of workers.
    parallel_for(n, [&](std::size_t i) {
        ParticleState cur = draw_initial(cfg, i);
        ParticlePath path(cur);
        Rng rng(cfg.master_seed, StreamDomain::particle, i);
        double s = rng.exponential(lambda);
        while (s <= horizon) {
            std::size_t j = rng.uniform_index(m);
            CollisionAngles xi = cfg.kernels.q.sample_angles(rng);
            double r = rng.uniform();

            ParticleState partner = law.paths[j].state_at(s);
            Vec3 x_i = cur.position + cur.velocity * (s - cur.last_event_time);
            Vec3 z = cur.velocity;
            Vec3 v = partner.velocity;

            JumpEvent ev;
            ev.time = s;
            ev.particle_index = i;
            ev.partner_position = partner.position;
            ev.partner_velocity = v;
            ev.angles = xi;

            double accept_p = cfg.kernels.sigma(norm(z - v)) *
                              cfg.kernels.beta(norm(x_i - partner.position));
            if (r <= accept_p) {
                Vec3 delta = jump_delta(cfg, z, v, xi);
                ev.accepted = true;
                ev.delta_v = delta;
                cur.position = x_i;
                cur.velocity = z + delta;
                cur.last_event_time = s;
                path.add_event(s, cur.velocity);
            }
            per_particle[i].push_back(ev);
            s += rng.exponential(lambda);
        }
        paths[i] = std::move(path);
    });

    SimResult out;
    std::size_t total = 0;
    for (const auto& list : per_particle) total += list.size();
    out.events.reserve(total);
    for (auto& list : per_particle) {
        out.events.insert(out.events.end(), list.begin(), list.end());
    }
    std::sort(out.events.begin(), out.events.end(),
              [](const JumpEvent& a, const JumpEvent& b) {
                  if (a.time != b.time) return a.time < b.time;
                  return a.particle_index < b.particle_index;
              });

    finalize(cfg, std::move(paths), out);
    return out;
}

}  // namespace

SimResult simulate(const SimConfig& cfg, const Ensemble* frozen_law) {
    cfg.validate();
    ValidationReport hyp =
        validate_hypotheses(cfg.kernels.q, cfg.kernels.sigma, cfg.kernels.beta);
    if (!hyp.passed) {
        throw ConfigInvalid("kernel hypotheses rejected\n" + hyp.to_string());
    }
    if (cfg.mode == SimMode::frozen) {
        if (frozen_law == nullptr) {
            throw FrozenLawMissing("frozen mode needs a stored law");
        }
        frozen_law->validate();
        if (frozen_law->kind != EnsembleKind::frozen_paths) {
            throw FrozenLawMissing("frozen mode needs a path ensemble");
        }
        if (frozen_law->time_horizon < cfg.horizon) {
            throw FrozenLawMissing(
                "frozen law horizon is shorter than the simulation horizon");
        }
        return simulate_frozen(cfg, *frozen_law);
    }
    return simulate_mean_field(cfg);
}

StoppingReport detect_stopping(const ParticlePath& path, int level) {
    StoppingReport rep;
    rep.level = level;
    double bound = static_cast<double>(level);
    if (norm(path.initial().velocity) > bound) {
        rep.tau = 0.0;
        return rep;
    }
    for (const auto& e : path.events()) {
        if (norm(e.new_velocity) > bound) {
            rep.tau = e.time;
            return rep;
        }
    }
    return rep;
}

}  // namespace enskog
