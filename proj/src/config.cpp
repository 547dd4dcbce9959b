#include "hjid/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hjid/errors.hpp"

namespace hjid {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

HamiltonianModel build_model(const json& j) {
    if (!j.is_object()) throw ConfigError("model must be a JSON object");
    const auto kind = j.value("kind", std::string{});
    const double X = j.value("X", 1.0);
    if (kind == "quadratic_potential") {
        reject_unknown(j, {"kind", "potential", "X"}, "model");
        const auto& pot = j.at("potential");
        if (pot.is_string()) {
            if (pot.get<std::string>() != "quartic_well") {
                throw ConfigError("unknown built-in potential '" + pot.get<std::string>() + "'");
            }
            return HamiltonianModel::quadratic_potential(Potential::quartic_well());
        }
        reject_unknown(pot, {"polynomial"}, "potential");
        return HamiltonianModel::quadratic_potential(Potential(pot.at("polynomial").get<std::vector<double>>(), X));
    }
    if (kind == "burgers") {
        reject_unknown(j, {"kind", "X"}, "model");
        return HamiltonianModel::burgers();
    }
    if (kind == "homogeneous") {
        reject_unknown(j, {"kind", "flux", "X"}, "model");
        return HamiltonianModel::homogeneous(j.at("flux").get<std::vector<double>>(), X);
    }
    if (kind == "traffic") {
        reject_unknown(j, {"kind", "v0", "dv", "r0", "dr", "X"}, "model");
        TrafficParams p;
        read(j, "v0", p.v0);
        read(j, "dv", p.dv);
        read(j, "r0", p.r0);
        read(j, "dr", p.dr);
        p.radius = X;
        return HamiltonianModel::transformed_traffic(p);
    }
    throw ConfigError("unknown model kind '" + kind + "'");
}

} // namespace

HamiltonianModel model_from_json(const std::string& json_text) {
    try {
        return build_model(json::parse(json_text));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model: ") + e.what());
    } catch (const InvalidModel& e) {
        throw ConfigError(e.what());
    }
}

void RunConfig::validate() const {
    if (!(grid.x_max > grid.x_min)) throw ConfigError("grid: x_max must exceed x_min");
    if (grid.n < 16) throw ConfigError("grid: n = " + std::to_string(grid.n) + " is below the minimum 16");
    if (!(time.T > 0.0) || !std::isfinite(time.T)) throw ConfigError("time: T must be positive");
    if (!(time.cfl > 0.0 && time.cfl < 1.0)) throw ConfigError("time: cfl must lie in (0, 1)");
    if (!(time.dt_ode > 0.0)) throw ConfigError("time: dt_ode must be positive");
    if (!(tol.drift > 0.0 && tol.shoot > 0.0 && tol.graph > 0.0 && tol.delta > 0.0)) {
        throw ConfigError("tolerances must be positive");
    }
    (void)model();
}

RunConfig config_from_json(const std::string& json_text) {
    RunConfig cfg;
    try {
        const json j = json::parse(json_text);
        reject_unknown(j, {"model", "grid", "time", "tolerances", "output_dir"}, "config");
        if (j.contains("model")) cfg.model_json = j.at("model").dump();
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            reject_unknown(g, {"x_min", "x_max", "n"}, "grid");
            read(g, "x_min", cfg.grid.x_min);
            read(g, "x_max", cfg.grid.x_max);
            if (g.contains("n")) {
                const long n = g.at("n").get<long>();
                if (n < 0) throw ConfigError("grid: n must be nonnegative");
                cfg.grid.n = static_cast<std::size_t>(n);
            }
        }
        if (j.contains("time")) {
            const auto& t = j.at("time");
            reject_unknown(t, {"T", "cfl", "dt_ode", "output_times"}, "time");
            read(t, "T", cfg.time.T);
            read(t, "cfl", cfg.time.cfl);
            read(t, "dt_ode", cfg.time.dt_ode);
            read(t, "output_times", cfg.time.output_times);
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            reject_unknown(t, {"drift", "shoot", "reach", "membership", "graph", "delta"}, "tolerances");
            read(t, "drift", cfg.tol.drift);
            read(t, "shoot", cfg.tol.shoot);
            read(t, "reach", cfg.tol.reach);
            read(t, "membership", cfg.tol.membership);
            read(t, "graph", cfg.tol.graph);
            read(t, "delta", cfg.tol.delta);
        }
        read(j, "output_dir", cfg.output_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

} // namespace hjid
