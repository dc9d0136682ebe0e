#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "enskog/errors.hpp"
#include "enskog/simulator.hpp"

using namespace enskog;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Rate Lambda = 2 with no thinning: every candidate is accepted.
SimConfig plain_config(std::size_t n, double horizon) {
    SimConfig cfg;
    cfg.particle_count = n;
    cfg.horizon = horizon;
    cfg.kernels.q = AngularMeasure::uniform(1.0 / M_PI);
    cfg.kernels.sigma = SpeedFactor::constant_one();
    cfg.kernels.beta = Mollifier::bump(kInf);
    cfg.master_seed = 2024;
    return cfg;
}

bool same_vec(const Vec3& a, const Vec3& b) { return a == b; }

bool same_events(const std::vector<JumpEvent>& a,
                 const std::vector<JumpEvent>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].time != b[k].time) return false;
        if (a[k].particle_index != b[k].particle_index) return false;
        if (!same_vec(a[k].partner_position, b[k].partner_position))
            return false;
        if (!same_vec(a[k].partner_velocity, b[k].partner_velocity))
            return false;
        if (a[k].angles.theta != b[k].angles.theta) return false;
        if (a[k].angles.phi != b[k].angles.phi) return false;
        if (a[k].accepted != b[k].accepted) return false;
        if (!same_vec(a[k].delta_v, b[k].delta_v)) return false;
    }
    return true;
}

bool same_paths(const Ensemble& a, const Ensemble& b) {
    if (a.paths.size() != b.paths.size()) return false;
    for (std::size_t i = 0; i < a.paths.size(); ++i) {
        const auto& pa = a.paths[i];
        const auto& pb = b.paths[i];
        if (!same_vec(pa.initial().position, pb.initial().position))
            return false;
        if (!same_vec(pa.initial().velocity, pb.initial().velocity))
            return false;
        if (pa.event_count() != pb.event_count()) return false;
        for (std::size_t k = 0; k < pa.event_count(); ++k) {
            if (pa.events()[k].time != pb.events()[k].time) return false;
            if (!same_vec(pa.events()[k].new_velocity,
                          pb.events()[k].new_velocity))
                return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("candidate clocks fire at the configured rate") {
    // N = 1000, Lambda = 2, T = 3: expect 6000 candidates, sd 77.
    auto cfg = plain_config(1000, 3.0);
    auto res = simulate(cfg);
    CHECK(res.candidate_count == res.events.size());
    CHECK(double(res.candidate_count) > 6000.0 - 4.0 * 77.5);
    CHECK(double(res.candidate_count) < 6000.0 + 4.0 * 77.5);
    // sigma = 1 and beta = 1 accept everything.
    CHECK(res.accepted_count == res.candidate_count);
    CHECK(res.paths.kind == EnsembleKind::frozen_paths);
    CHECK(res.paths.time_horizon == 3.0);
    CHECK(res.paths.size() == 1000);
    CHECK(res.stopping.empty());
    for (std::size_t k = 1; k < res.events.size(); ++k) {
        CHECK(res.events[k - 1].time <= res.events[k].time);
    }
}

TEST_CASE("a constant speed factor thins acceptance binomially") {
    auto cfg = plain_config(1000, 3.0);
    cfg.kernels.sigma = SpeedFactor::custom([](double) { return 0.5; }, 0.0);
    auto res = simulate(cfg);
    double frac =
        double(res.accepted_count) / double(res.candidate_count);
    // 4 binomial standard errors around one half.
    double slack = 4.0 * std::sqrt(0.25 / double(res.candidate_count));
    CHECK(frac > 0.5 - slack);
    CHECK(frac < 0.5 + slack);
    // Rejected candidates are recorded with a zero jump.
    bool saw_rejected = false;
    for (const auto& ev : res.events) {
        if (!ev.accepted) {
            saw_rejected = true;
            CHECK(ev.delta_v == Vec3{0.0, 0.0, 0.0});
        }
    }
    CHECK(saw_rejected);
}

TEST_CASE("zero angular mass gives exactly ballistic paths") {
    auto cfg = plain_config(50, 2.0);
    cfg.kernels.q = AngularMeasure::uniform(0.0);
    auto res = simulate(cfg);
    CHECK(res.candidate_count == 0);
    CHECK(res.events.empty());
    for (const auto& p : res.paths.paths) {
        CHECK(p.event_count() == 0);
        auto end = p.state_at(2.0);
        CHECK(end.position ==
              p.initial().position + p.initial().velocity * 2.0);
        CHECK(end.velocity == p.initial().velocity);
    }
}

TEST_CASE("symmetric updates conserve momentum and energy") {
    auto cfg = plain_config(100, 1.0);
    cfg.partner_update = PartnerUpdate::symmetric;
    auto res = simulate(cfg);
    REQUIRE(res.accepted_count > 50);

    Vec3 p0{}, p1{};
    double e0 = 0.0, e1 = 0.0;
    for (const auto& path : res.paths.paths) {
        p0 = p0 + path.initial().velocity;
        e0 += norm_sq(path.initial().velocity);
        auto end = path.state_at(1.0);
        p1 = p1 + end.velocity;
        e1 += norm_sq(end.velocity);
    }
    CHECK(norm(p1 - p0) < 1e-12);
    CHECK(std::abs(e1 - e0) < 1e-10 * e0);
}

TEST_CASE("spatial thinning keeps accepted pairs inside the radius") {
    SimConfig cfg = plain_config(400, 2.0);
    cfg.kernels.beta = Mollifier::bump(1.0);
    auto res = simulate(cfg);
    std::size_t accepted = 0;
    for (const auto& ev : res.events) {
        if (!ev.accepted) continue;
        ++accepted;
        auto tagged = res.paths.paths[ev.particle_index].state_at(ev.time);
        CHECK(norm(tagged.position - ev.partner_position) < 1.0);
    }
    CHECK(accepted == res.accepted_count);
    // Standard normal positions put most pairs outside the unit ball, so
    // the thinning must both accept and reject at this density.
    CHECK(res.accepted_count > 0);
    CHECK(res.accepted_count < res.candidate_count);
}

TEST_CASE("identical configurations reproduce bitwise") {
    auto cfg = plain_config(200, 1.0);
    auto a = simulate(cfg);
    auto b = simulate(cfg);
    CHECK(same_events(a.events, b.events));
    CHECK(same_paths(a.paths, b.paths));
}

TEST_CASE("an unhit truncation level does not perturb the run") {
    auto cfg = plain_config(200, 1.0);
    auto base = simulate(cfg);
    double top = 0.0;
    for (const auto& p : base.paths.paths) {
        top = std::max(top, norm(p.initial().velocity));
        for (const auto& ev : p.events()) {
            top = std::max(top, norm(ev.new_velocity));
        }
    }
    REQUIRE(top < 8.0);  // nobody reaches the level below

    auto truncated = cfg;
    truncated.truncation_level = 8;
    auto res = simulate(truncated);
    CHECK(same_events(base.events, res.events));
    CHECK(same_paths(base.paths, res.paths));
    // Truncated runs report stopping for every particle; nobody stopped.
    REQUIRE(res.stopping.size() == 200);
    for (const auto& rep : res.stopping) {
        CHECK(rep.level == 8);
        CHECK(!rep.tau.has_value());
    }
}

TEST_CASE("frozen mode runs particles independently of worker count") {
    // Ballistic paths over [0, 3] serve as the stored law.
    auto source = plain_config(200, 3.0);
    source.kernels.q = AngularMeasure::uniform(0.0);
    auto law = simulate(source).paths;

    SimConfig cfg = plain_config(300, 2.0);
    cfg.mode = SimMode::frozen;
    cfg.master_seed = 77;

    setenv("ENSKOG_THREADS", "1", 1);
    auto serial = simulate(cfg, &law);
    setenv("ENSKOG_THREADS", "4", 1);
    auto threaded = simulate(cfg, &law);
    unsetenv("ENSKOG_THREADS");

    CHECK(serial.candidate_count > 0);
    CHECK(same_events(serial.events, threaded.events));
    CHECK(same_paths(serial.paths, threaded.paths));
}

TEST_CASE("frozen mode validates its stored law") {
    SimConfig cfg = plain_config(10, 2.0);
    cfg.mode = SimMode::frozen;
    CHECK_THROWS_AS(simulate(cfg, nullptr), FrozenLawMissing);

    Ensemble wrong_kind;
    wrong_kind.kind = EnsembleKind::states_at_time;
    wrong_kind.time_horizon = 2.0;
    wrong_kind.states.resize(5);
    CHECK_THROWS_AS(simulate(cfg, &wrong_kind), FrozenLawMissing);

    auto source = plain_config(20, 1.0);
    source.kernels.q = AngularMeasure::uniform(0.0);
    auto short_law = simulate(source).paths;  // horizon 1 < 2
    CHECK_THROWS_AS(simulate(cfg, &short_law), FrozenLawMissing);
}

TEST_CASE("structural validation rejects bad configurations") {
    auto cfg = plain_config(1000, 3.0);

    auto sym_frozen = cfg;
    sym_frozen.mode = SimMode::frozen;
    sym_frozen.partner_update = PartnerUpdate::symmetric;
    CHECK_THROWS_AS(sym_frozen.validate(), ConfigInvalid);

    auto late = cfg;
    late.output_times = {1.0, 4.0};
    CHECK_THROWS_AS(late.validate(), ConfigInvalid);

    auto unsorted = cfg;
    unsorted.output_times = {2.0, 1.0};
    CHECK_THROWS_AS(unsorted.validate(), ConfigInvalid);

    auto lonely = cfg;
    lonely.particle_count = 1;
    CHECK_THROWS_AS(lonely.validate(), ConfigInvalid);

    auto bad_level = cfg;
    bad_level.truncation_level = 0;
    CHECK_THROWS_AS(bad_level.validate(), ConfigInvalid);

    auto heavy = cfg;
    heavy.event_budget = 100.0;  // expects 6000 candidates
    CHECK_THROWS_AS(heavy.validate(), RateOverflow);

    auto diverging = cfg;
    diverging.kernels.q = AngularMeasure::maxwellian_power(0.5, 0.0);
    CHECK_THROWS_AS(diverging.validate(), ConfigInvalid);
}

TEST_CASE("two point initial velocities appear with both signs") {
    auto cfg = plain_config(200, 1.0);
    cfg.kernels.q = AngularMeasure::uniform(0.0);
    cfg.initial = InitialLaw::two_point_velocity(2.0);
    auto res = simulate(cfg);
    int plus = 0, minus = 0;
    for (const auto& p : res.paths.paths) {
        auto v = p.initial().velocity;
        if (v == Vec3{2.0, 0.0, 0.0}) ++plus;
        else if (v == Vec3{-2.0, 0.0, 0.0}) ++minus;
    }
    CHECK(plus + minus == 200);
    CHECK(plus > 50);
    CHECK(minus > 50);
}

TEST_CASE("stopping detection scans initial state then jumps") {
    ParticleState fast;
    fast.velocity = {0.0, 0.0, 5.0};
    ParticlePath hot(fast);
    auto rep = detect_stopping(hot, 4);
    REQUIRE(rep.tau.has_value());
    CHECK(*rep.tau == 0.0);
    CHECK(rep.level == 4);

    ParticleState slow;
    slow.velocity = {1.0, 0.0, 0.0};
    ParticlePath warm(slow);
    warm.add_event(0.5, Vec3{2.0, 0.0, 0.0});
    warm.add_event(1.5, Vec3{0.0, 4.5, 0.0});
    rep = detect_stopping(warm, 4);
    REQUIRE(rep.tau.has_value());
    CHECK(*rep.tau == 1.5);

    rep = detect_stopping(warm, 5);
    CHECK(!rep.tau.has_value());
}
