#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hjid/errors.hpp"
#include "hjid/hamiltonian_model.hpp"

namespace hjid {

/// JSON model object, one of
///   {"kind": "quadratic_potential", "potential": "quartic_well" | {"polynomial": [...]}, "X": r}
///   {"kind": "burgers"}
///   {"kind": "homogeneous", "flux": [...], "X": r}
///   {"kind": "traffic", "v0": .., "dv": .., "r0": .., "dr": .., "X": r}
/// Polynomial coefficients are ascending.
HamiltonianModel model_from_json(const std::string& json_text);

struct GridConfig {
    double x_min = -6.0;
    double x_max = 6.0;
    std::size_t n = 2000;
};

struct TimeConfig {
    double T = 1.0;
    double cfl = 0.45;
    double dt_ode = 1e-4;
    std::vector<double> output_times;
};

struct Tolerances {
    double drift = 1e-7;
    double shoot = 1e-8;
    double reach = 0.0;      // ≤ 0: 20·dx·Lip(W) + 1e−3
    double membership = 0.0; // ≤ 0: 10·dx·(1 + Lip)
    double graph = 1e-4;
    double delta = 1e-10;
};

struct RunConfig {
    std::string model_json = R"({"kind": "quadratic_potential", "potential": "quartic_well", "X": 1})";
    GridConfig grid;
    TimeConfig time;
    Tolerances tol;
    std::string output_dir = "out";

    HamiltonianModel model() const { return model_from_json(model_json); }
    /// Throws ConfigError when an invariant (n ≥ 16, T > 0, 0 < cfl < 1, ...) fails.
    void validate() const;
};

/// Fields absent from the JSON keep their defaults. Unknown keys are rejected.
RunConfig config_from_json(const std::string& json_text);
RunConfig load_config(const std::string& path);

} // namespace hjid
