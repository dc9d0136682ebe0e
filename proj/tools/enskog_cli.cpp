// Command line front end: collide applies one collision, simulate runs the
// particle system and writes a reproducible output directory, picard drives
// the fixed-point iteration, diagnose re-checks a finished run, validate
// vets a kernel configuration. Exit codes: 0 success, 1 validation or a
// failed check, 2 usage or a refused request, 3 runtime failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "enskog/collision.hpp"
#include "enskog/config.hpp"
#include "enskog/diagnostics.hpp"
#include "enskog/errors.hpp"
#include "enskog/io.hpp"
#include "enskog/picard.hpp"
#include "enskog/simulator.hpp"
#include "enskog/testfunction.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_angle(const std::string& text) {
    if (text == "pi") return kPi;
    try {
        std::size_t idx = 0;
        double v = std::stod(text, &idx);
        if (idx != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw CLI::ValidationError("expected a number or 'pi', got '" + text +
                                   "'");
    }
}

enskog::Vec3 parse_triple(const std::string& text) {
    enskog::Vec3 v;
    double c[3];
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf%n", &c[0], &c[1], &c[2],
                    &consumed) != 3 ||
        consumed != static_cast<int>(text.size())) {
        throw CLI::ValidationError("expected x,y,z, got '" + text + "'");
    }
    v.x = c[0];
    v.y = c[1];
    v.z = c[2];
    return v;
}

std::vector<double> parse_time_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad time list entry '" + item + "'");
        }
    }
    return out;
}

enskog::RunConfig load_manifest_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw enskog::ConfigInvalid("cannot open manifest: " + path);
    ordered_json m;
    try {
        m = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw enskog::FormatError("manifest " + path + ": " + e.what());
    }
    if (!m.contains("config") || !m["config"].is_object()) {
        throw enskog::FormatError("manifest " + path +
                                  " has no config object");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& item : m["config"].items()) {
        if (!item.value().is_string()) {
            throw enskog::FormatError("manifest config value for " +
                                      item.key() + " is not a string");
        }
        pairs.emplace_back(item.key(), item.value().get<std::string>());
    }
    return enskog::from_key_values(pairs);
}

void run_simulate(const enskog::RunConfig& rc) {
    std::optional<enskog::Ensemble> frozen;
    if (rc.sim.mode == enskog::SimMode::frozen) {
        if (rc.frozen_law_path.empty()) {
            throw enskog::FrozenLawMissing(
                "mode=frozen needs frozen_law=<path to a stored path "
                "ensemble>");
        }
        frozen = enskog::read_ensemble(rc.frozen_law_path);
    }

    auto t0 = std::chrono::steady_clock::now();
    enskog::SimResult result =
        enskog::simulate(rc.sim, frozen ? &*frozen : nullptr);
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

    fs::create_directories(rc.out_dir);
    fs::path out(rc.out_dir);
    enskog::write_ensemble(result.paths, (out / "paths.ensk1").string());
    enskog::write_events_csv(result.events, (out / "events.csv").string());

    std::vector<std::string> snapshot_names;
    for (std::size_t i = 0; i < rc.sim.output_times.size(); ++i) {
        double t = rc.sim.output_times[i];
        enskog::Ensemble snap;
        snap.kind = enskog::EnsembleKind::states_at_time;
        snap.time_horizon = t;
        snap.seed_lineage = result.paths.seed_lineage;
        snap.states = enskog::marginal_at(result.paths, t);
        std::string name = "snapshot_" + std::to_string(i) + ".ensk1";
        enskog::write_ensemble(snap, (out / name).string());
        snapshot_names.push_back(name);
    }

    ordered_json manifest;
    manifest["format"] = "enskog-run-manifest";
    manifest["version"] = 1;
    manifest["command"] = "simulate";
    ordered_json cfg = ordered_json::object();
    for (const auto& kv : rc.echo) cfg[kv.first] = kv.second;
    manifest["config"] = cfg;
    manifest["counts"] = {{"candidates", result.candidate_count},
                          {"accepted", result.accepted_count},
                          {"events_recorded", result.events.size()}};
    manifest["snapshot_times"] = rc.sim.output_times;
    manifest["outputs"] = {{"paths", "paths.ensk1"},
                           {"events", "events.csv"},
                           {"snapshots", snapshot_names}};
    ordered_json stopping = ordered_json::array();
    for (const auto& report : result.stopping) {
        ordered_json row;
        row["level"] = report.level;
        if (report.tau) {
            row["tau"] = *report.tau;
        } else {
            row["tau"] = nullptr;
        }
        stopping.push_back(row);
    }
    manifest["stopping"] = stopping;
    manifest["wall_clock_seconds"] = wall;
    std::ofstream mf(out / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
    if (!mf) throw enskog::Error("cannot write manifest in " + rc.out_dir);

    std::printf("simulate: %zu members, %llu candidates, %llu accepted, "
                "outputs in %s\n",
                result.paths.size(),
                static_cast<unsigned long long>(result.candidate_count),
                static_cast<unsigned long long>(result.accepted_count),
                rc.out_dir.c_str());
}

int run_picard(const enskog::RunConfig& rc) {
    enskog::PicardOptions opts;
    opts.base = rc.sim;
    opts.max_iters = rc.picard_max_iters;
    opts.tol = rc.picard_tol;
    opts.dictionary_size = rc.picard_dictionary;
    opts.common_random_numbers = rc.picard_crn;
    enskog::PicardRun run = enskog::run_to_tolerance(opts);

    ordered_json doc;
    doc["format"] = "enskog-picard-report";
    doc["version"] = 1;
    ordered_json cfg = ordered_json::object();
    for (const auto& kv : rc.echo) cfg[kv.first] = kv.second;
    doc["config"] = cfg;
    doc["noise_floor"] = run.noise_floor;
    doc["converged"] = run.converged;
    doc["iterations"] = run.iterations;
    ordered_json states = ordered_json::array();
    for (const auto& st : run.states) {
        ordered_json row;
        row["index"] = st.index;
        ordered_json moments = ordered_json::array();
        for (const auto& p : st.moment2_trace) {
            moments.push_back({{"time", p.time},
                               {"moment2", p.moment2},
                               {"se", p.standard_error}});
        }
        row["moment2"] = moments;
        ordered_json dists = ordered_json::array();
        for (const auto& d : st.distance_to_previous) {
            dists.push_back({{"time", d.time},
                             {"value", d.distance.value},
                             {"se", d.distance.standard_error}});
        }
        row["distance_to_previous"] = dists;
        states.push_back(row);
    }
    doc["states"] = states;
    if (run.states.size() >= 3) {
        enskog::MomentEnvelope env = enskog::moment_envelope(run.states);
        doc["envelope"] = {{"scale", env.scale},
                           {"growth", env.growth},
                           {"headroom", env.headroom},
                           {"ok", env.ok}};
    }

    fs::create_directories(rc.out_dir);
    std::ofstream out(fs::path(rc.out_dir) / "picard.json",
                      std::ios::binary);
    out << doc.dump(2) << "\n";
    if (!out) throw enskog::Error("cannot write picard report in " + rc.out_dir);

    for (const auto& st : run.states) {
        if (st.distance_to_previous.empty()) continue;
        double worst = 0.0;
        for (const auto& d : st.distance_to_previous) {
            worst = std::max(worst, d.distance.value);
        }
        std::printf("iteration %d: distance %.6g\n", st.index, worst);
    }
    std::printf("picard: %s after %zu iterations (noise floor %.6g)\n",
                run.converged ? "converged" : "did not converge",
                run.iterations, run.noise_floor);
    return 0;
}

int run_diagnose(const std::string& run_dir, const std::string& second_dir,
                 const std::string& test, std::size_t samples, double t0,
                 double dt, std::uint64_t seed,
                 const std::vector<double>& times_arg) {
    fs::path dir(run_dir);
    enskog::RunConfig rc =
        load_manifest_config((dir / "manifest.json").string());
    enskog::Ensemble law =
        enskog::read_ensemble((dir / "paths.ensk1").string());

    std::vector<double> times =
        times_arg.empty() ? rc.sim.output_times : times_arg;
    if (times.empty()) times.push_back(law.time_horizon);

    bool all = test == "all";
    bool ok = true;
    auto show = [&](const enskog::DiagnosticsReport& report) {
        std::printf("%s\n", report.to_string().c_str());
        ok = ok && report.pass;
    };

    if (all || test == "tanaka") {
        show(enskog::tanaka_identity(rc.sim.kernels.q, rc.sim.kernels.sigma,
                                     samples, seed));
    }
    if (all || test == "invariance") {
        show(enskog::maxwellian_invariance(law, times));
    }
    if (all || test == "weak_form") {
        for (const auto& psi : enskog::weak_form_suite()) {
            show(enskog::weak_form_residual(law, rc.sim.kernels, psi, t0, dt,
                                            seed));
        }
    }
    if (test == "uniqueness" || (all && !second_dir.empty())) {
        if (second_dir.empty()) {
            throw CLI::ValidationError(
                "--test uniqueness needs --second-run");
        }
        enskog::Ensemble other = enskog::read_ensemble(
            (fs::path(second_dir) / "paths.ensk1").string());
        show(enskog::marginal_uniqueness(law, other, times,
                                         rc.picard_dictionary));
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-driven interacting jump-diffusion particle system"};
    app.require_subcommand(1);
    int exit_code = 0;

    // collide
    auto* collide_cmd =
        app.add_subcommand("collide", "Apply one binary collision");
    std::string opt_u, opt_v, opt_theta, opt_phi = "0";
    collide_cmd->add_option("--u", opt_u, "First velocity x,y,z")->required();
    collide_cmd->add_option("--v", opt_v, "Second velocity x,y,z")->required();
    collide_cmd->add_option("--theta", opt_theta, "Deflection angle in (0, pi]")
        ->required();
    collide_cmd->add_option("--phi", opt_phi, "Azimuthal angle in [0, 2pi)");
    collide_cmd->callback([&]() {
        enskog::CollisionAngles xi;
        xi.theta = parse_angle(opt_theta);
        xi.phi = parse_angle(opt_phi);
        enskog::CollisionOutcome out =
            enskog::collide(parse_triple(opt_u), parse_triple(opt_v), xi);
        std::printf("u_star %.17g %.17g %.17g\n", out.u_star.x, out.u_star.y,
                    out.u_star.z);
        std::printf("v_star %.17g %.17g %.17g\n", out.v_star.x, out.v_star.y,
                    out.v_star.z);
    });

    // simulate
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Run the particle system and write an output directory");
    std::string sim_config, sim_manifest, sim_out;
    auto* sim_config_opt =
        sim_cmd->add_option("--config", sim_config, "key=value config file");
    sim_cmd->add_option("--from-manifest", sim_manifest,
                        "Rebuild the configuration from a run manifest")
        ->excludes(sim_config_opt);
    sim_cmd->add_option("--out", sim_out, "Output directory override");
    sim_cmd->callback([&]() {
        if (sim_config.empty() && sim_manifest.empty()) {
            throw CLI::RequiredError("--config or --from-manifest");
        }
        enskog::RunConfig rc = sim_config.empty()
                                   ? load_manifest_config(sim_manifest)
                                   : enskog::parse_config_file(sim_config);
        if (!sim_out.empty()) rc.out_dir = sim_out;
        run_simulate(rc);
    });

    // picard
    auto* pic_cmd = app.add_subcommand(
        "picard", "Iterate the law to a fixed point and report convergence");
    std::string pic_config, pic_out;
    pic_cmd->add_option("--config", pic_config, "key=value config file")
        ->required();
    pic_cmd->add_option("--out", pic_out, "Output directory override");
    pic_cmd->callback([&]() {
        enskog::RunConfig rc = enskog::parse_config_file(pic_config);
        if (!pic_out.empty()) rc.out_dir = pic_out;
        exit_code = run_picard(rc);
    });

    // diagnose
    auto* diag_cmd = app.add_subcommand(
        "diagnose", "Re-check statistical properties of a finished run");
    std::string diag_run, diag_second, diag_test = "all", diag_times;
    std::size_t diag_samples = 100000;
    double diag_t0 = 1.0, diag_dt = 0.1;
    std::uint64_t diag_seed = 0;
    diag_cmd->add_option("--run", diag_run, "Run directory with manifest.json")
        ->required();
    diag_cmd->add_option("--second-run", diag_second,
                         "Second run directory (uniqueness check)");
    diag_cmd
        ->add_option("--test", diag_test,
                     "tanaka | invariance | weak_form | uniqueness | all")
        ->check(CLI::IsMember(
            {"tanaka", "invariance", "weak_form", "uniqueness", "all"}));
    diag_cmd->add_option("--samples", diag_samples,
                         "Sample count for the collision identity");
    diag_cmd->add_option("--t0", diag_t0, "Center time of the residual check");
    diag_cmd->add_option("--dt", diag_dt, "Stencil width of the residual check");
    diag_cmd->add_option("--seed", diag_seed, "Seed for diagnostic draws");
    diag_cmd->add_option("--times", diag_times,
                         "Comma-separated check times (default: manifest "
                         "output times)");
    diag_cmd->callback([&]() {
        exit_code = run_diagnose(diag_run, diag_second, diag_test,
                                 diag_samples, diag_t0, diag_dt, diag_seed,
                                 parse_time_list(diag_times));
    });

    // validate
    auto* val_cmd = app.add_subcommand(
        "validate", "Check a kernel configuration against the model "
                    "hypotheses");
    std::string val_config;
    val_cmd->add_option("--config", val_config, "key=value config file")
        ->required();
    val_cmd->callback([&]() {
        enskog::RunConfig rc = enskog::parse_config_file(val_config);
        enskog::ValidationReport report = enskog::validate_hypotheses(
            rc.sim.kernels.q, rc.sim.kernels.sigma, rc.sim.kernels.beta);
        std::printf("%s\n", report.to_string().c_str());
        exit_code = report.passed ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const enskog::NoiseFloorRefusal& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return 2;
    } catch (const enskog::ConfigInvalid& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return 1;
    } catch (const enskog::RateOverflow& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return 1;
    } catch (const enskog::FormatError& e) {
        std::fprintf(stderr, "bad input file: %s\n", e.what());
        return 1;
    } catch (const enskog::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return exit_code;
}
