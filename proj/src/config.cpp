#include "enskog/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "enskog/errors.hpp"

namespace enskog {
namespace {

const char* const kRecognizedKeys[] = {
    "mode",          "n_particles",      "horizon",
    "q.family",      "q.theta_min",      "q.mass",
    "q.coefficient", "q.edges",          "q.density",
    "sigma.family",  "sigma.slope",      "sigma.value",
    "beta.shape",    "beta.radius",      "partner_update",
    "truncation_j",  "output_times",     "seed",
    "out_dir",       "initial.position", "initial.velocity",
    "initial.speed", "event_budget",     "frozen_law",
    "picard.max_iters", "picard.tol",    "picard.dictionary",
    "picard.crn",
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* what) {
    throw ConfigInvalid("key " + key + ": value '" + value + "' is not " +
                        what);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t idx = 0;
        double v = std::stod(value, &idx);
        if (idx != value.size() || std::isnan(v)) {
            bad_value(key, value, "a number");
        }
        return v;
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, value, "a number");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t idx = 0;
        if (!value.empty() && value[0] == '-') bad_value(key, value, "a non-negative integer");
        std::uint64_t v = std::stoull(value, &idx, 0);
        if (idx != value.size()) bad_value(key, value, "a non-negative integer");
        return v;
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, value, "a non-negative integer");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_value(key, value, "a boolean (true/false)");
}

std::vector<double> parse_list(const std::string& key,
                               const std::string& value) {
    std::vector<double> out;
    if (trim(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

// Pending key/value pairs; reading a key consumes it, so whatever is left
// at the end was either unknown or not applicable to the chosen families.
struct KeyBag {
    std::map<std::string, std::string> pending;

    explicit KeyBag(
        const std::vector<std::pair<std::string, std::string>>& pairs) {
        for (const auto& kv : pairs) {
            if (!pending.emplace(kv.first, kv.second).second) {
                throw ConfigInvalid("duplicate configuration key: " +
                                    kv.first);
            }
        }
    }

    bool take(const std::string& key, std::string* value) {
        auto it = pending.find(key);
        if (it == pending.end()) return false;
        *value = it->second;
        pending.erase(it);
        return true;
    }

    void finish() const {
        if (pending.empty()) return;
        const std::string& key = pending.begin()->first;
        for (const char* known : kRecognizedKeys) {
            if (key == known) {
                throw ConfigInvalid("key " + key +
                                    " does not apply to this configuration");
            }
        }
        throw ConfigInvalid("unknown configuration key: " + key);
    }
};

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

RunConfig from_key_values(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    KeyBag bag(pairs);
    RunConfig rc;
    SimConfig& sim = rc.sim;
    std::string v;

    std::string mode = "mean_field";
    if (bag.take("mode", &v)) mode = v;
    if (mode == "mean_field") {
        sim.mode = SimMode::mean_field;
    } else if (mode == "frozen") {
        sim.mode = SimMode::frozen;
    } else {
        bad_value("mode", mode, "one of mean_field, frozen");
    }

    if (bag.take("n_particles", &v)) {
        sim.particle_count = static_cast<std::size_t>(parse_u64("n_particles", v));
    }
    if (bag.take("horizon", &v)) sim.horizon = parse_double("horizon", v);

    std::string q_family = "uniform";
    if (bag.take("q.family", &v)) q_family = v;
    double theta_min = 0.0;
    bool have_theta_min = bag.take("q.theta_min", &v);
    if (have_theta_min) theta_min = parse_double("q.theta_min", v);
    std::vector<std::pair<std::string, std::string>> q_echo;
    if (q_family == "uniform") {
        double mass = 1.0;
        if (bag.take("q.mass", &v)) mass = parse_double("q.mass", v);
        sim.kernels.q = AngularMeasure::uniform(mass, theta_min);
        q_echo.emplace_back("q.theta_min", format_double(theta_min));
        q_echo.emplace_back("q.mass", format_double(mass));
    } else if (q_family == "maxwellian_power") {
        double coeff = 1.0;
        bool have = bag.take("q.coefficient", &v);
        if (!have && bag.take("q.mass", &v)) have = true;  // accepted alias
        if (have) coeff = parse_double("q.coefficient", v);
        sim.kernels.q = AngularMeasure::maxwellian_power(coeff, theta_min);
        q_echo.emplace_back("q.theta_min", format_double(theta_min));
        q_echo.emplace_back("q.coefficient", format_double(coeff));
    } else if (q_family == "custom_table") {
        if (have_theta_min) {
            throw ConfigInvalid("custom_table support comes from q.edges; "
                                "q.theta_min does not apply");
        }
        std::string ev, dv;
        if (!bag.take("q.edges", &ev) || !bag.take("q.density", &dv)) {
            throw ConfigInvalid("custom_table needs q.edges and q.density");
        }
        std::vector<double> edges = parse_list("q.edges", ev);
        std::vector<double> density = parse_list("q.density", dv);
        sim.kernels.q = AngularMeasure::custom_table(edges, density);
        q_echo.emplace_back("q.edges", format_list(edges));
        q_echo.emplace_back("q.density", format_list(density));
    } else {
        bad_value("q.family", q_family,
                  "one of uniform, maxwellian_power, custom_table");
    }

    std::string sigma_family = "constant_one";
    if (bag.take("sigma.family", &v)) sigma_family = v;
    std::vector<std::pair<std::string, std::string>> sigma_echo;
    if (sigma_family == "constant_one") {
        sim.kernels.sigma = SpeedFactor::constant_one();
    } else if (sigma_family == "smooth_saturating") {
        double slope = 1.0;
        if (bag.take("sigma.slope", &v)) slope = parse_double("sigma.slope", v);
        sim.kernels.sigma = SpeedFactor::smooth_saturating(slope);
        sigma_echo.emplace_back("sigma.slope", format_double(slope));
    } else if (sigma_family == "constant") {
        if (!bag.take("sigma.value", &v)) {
            throw ConfigInvalid("sigma.family=constant needs sigma.value");
        }
        double value = parse_double("sigma.value", v);
        if (!(value >= 0.0 && value <= 1.0)) {
            bad_value("sigma.value", v, "in [0, 1]");
        }
        sim.kernels.sigma =
            SpeedFactor::custom([value](double) { return value; }, 0.0);
        sigma_echo.emplace_back("sigma.value", format_double(value));
    } else {
        bad_value("sigma.family", sigma_family,
                  "one of constant_one, smooth_saturating, constant");
    }

    std::string beta_shape = "bump";
    if (bag.take("beta.shape", &v)) beta_shape = v;
    double beta_radius = 0.5;
    if (bag.take("beta.radius", &v)) beta_radius = parse_double("beta.radius", v);
    if (beta_shape == "bump") {
        sim.kernels.beta = Mollifier::bump(beta_radius);
    } else if (beta_shape == "cosine_taper") {
        sim.kernels.beta = Mollifier::cosine_taper(beta_radius);
    } else {
        bad_value("beta.shape", beta_shape, "one of bump, cosine_taper");
    }

    std::string partner = "one_sided";
    if (bag.take("partner_update", &v)) partner = v;
    if (partner == "one_sided") {
        sim.partner_update = PartnerUpdate::one_sided;
    } else if (partner == "symmetric") {
        sim.partner_update = PartnerUpdate::symmetric;
    } else {
        bad_value("partner_update", partner, "one of one_sided, symmetric");
    }

    bool have_truncation = bag.take("truncation_j", &v);
    if (have_truncation) {
        sim.truncation_level = static_cast<int>(parse_u64("truncation_j", v));
    }

    if (bag.take("output_times", &v)) {
        sim.output_times = parse_list("output_times", v);
    }
    if (bag.take("seed", &v)) sim.master_seed = parse_u64("seed", v);
    if (bag.take("out_dir", &v)) rc.out_dir = v;

    std::string init_position = "gaussian";
    if (bag.take("initial.position", &v)) init_position = v;
    if (init_position != "gaussian") {
        bad_value("initial.position", init_position, "gaussian");
    }
    std::string init_velocity = "maxwellian";
    if (bag.take("initial.velocity", &v)) init_velocity = v;
    double init_speed = 1.0;
    bool have_speed = false;
    if (init_velocity == "maxwellian") {
        sim.initial = InitialLaw::defaults();
    } else if (init_velocity == "two_point") {
        if (bag.take("initial.speed", &v)) init_speed = parse_double("initial.speed", v);
        have_speed = true;
        sim.initial = InitialLaw::two_point_velocity(init_speed);
    } else {
        bad_value("initial.velocity", init_velocity,
                  "one of maxwellian, two_point");
    }

    if (bag.take("event_budget", &v)) sim.event_budget = parse_double("event_budget", v);
    if (bag.take("frozen_law", &v)) rc.frozen_law_path = v;

    if (bag.take("picard.max_iters", &v)) {
        rc.picard_max_iters = static_cast<std::size_t>(parse_u64("picard.max_iters", v));
    }
    if (bag.take("picard.tol", &v)) rc.picard_tol = parse_double("picard.tol", v);
    if (bag.take("picard.dictionary", &v)) {
        rc.picard_dictionary = static_cast<int>(parse_u64("picard.dictionary", v));
    }
    if (bag.take("picard.crn", &v)) rc.picard_crn = parse_bool("picard.crn", v);

    bag.finish();

    auto& echo = rc.echo;
    echo.emplace_back("mode", mode);
    echo.emplace_back("n_particles", std::to_string(sim.particle_count));
    echo.emplace_back("horizon", format_double(sim.horizon));
    echo.emplace_back("q.family", q_family);
    echo.insert(echo.end(), q_echo.begin(), q_echo.end());
    echo.emplace_back("sigma.family", sigma_family);
    echo.insert(echo.end(), sigma_echo.begin(), sigma_echo.end());
    echo.emplace_back("beta.shape", beta_shape);
    echo.emplace_back("beta.radius", format_double(beta_radius));
    echo.emplace_back("partner_update", partner);
    if (have_truncation) {
        echo.emplace_back("truncation_j", std::to_string(*sim.truncation_level));
    }
    echo.emplace_back("output_times", format_list(sim.output_times));
    echo.emplace_back("seed", std::to_string(sim.master_seed));
    echo.emplace_back("initial.position", init_position);
    echo.emplace_back("initial.velocity", init_velocity);
    if (have_speed) echo.emplace_back("initial.speed", format_double(init_speed));
    echo.emplace_back("event_budget", format_double(sim.event_budget));
    if (!rc.frozen_law_path.empty()) {
        echo.emplace_back("frozen_law", rc.frozen_law_path);
    }
    echo.emplace_back("picard.max_iters", std::to_string(rc.picard_max_iters));
    echo.emplace_back("picard.tol", format_double(rc.picard_tol));
    echo.emplace_back("picard.dictionary", std::to_string(rc.picard_dictionary));
    echo.emplace_back("picard.crn", rc.picard_crn ? "true" : "false");
    return rc;
}

RunConfig parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigInvalid("line " + std::to_string(lineno) +
                                ": expected key=value, got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigInvalid("line " + std::to_string(lineno) +
                                ": empty key");
        }
        pairs.emplace_back(key, value);
    }
    return from_key_values(pairs);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigInvalid("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace enskog
