#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "hjid/grid_profile.hpp"
#include "hjid/hamiltonian_model.hpp"

namespace hjid {

struct EvolveOptions {
    double cfl = 0.45;
    /// Times in (0, T) at which a snapshot is stored in addition to 0 and T.
    std::vector<double> output_times;
};

/// Snapshots of a finite-volume or Hamilton–Jacobi solve.
struct SpaceTimeField {
    std::vector<double> times;
    std::vector<GridProfile> profiles;
    /// Per stored time, the interfaces i (between cells i and i+1) flagged as shocks.
    std::vector<std::vector<std::size_t>> shock_cells;
    /// First time step end at which any interface was flagged; NaN if none.
    double first_shock_time = std::numeric_limits<double>::quiet_NaN();
    std::size_t steps = 0;

    const GridProfile& final_profile() const { return profiles.back(); }
};

/// Interfaces i with u_i − u_{i+1} > max(10·dx·Lip_est, 0.1), where Lip_est is
/// the largest neighbouring slope at offsets 2..4 on either side, so the
/// smeared shock itself does not inflate it.
std::vector<std::size_t> detect_shocks(const GridProfile& u);

/// Godunov fluxes for p ↦ H(x_i, p) frozen at the centre of cell i on both of
/// its interfaces, Strang-split with the source ṗ = −∂ₓH(x_i, p) integrated
/// by one RK2 step per half step. Outflow boundaries.
SpaceTimeField evolve_cl(const HamiltonianModel& model, const GridProfile& u0, double T, EvolveOptions opts = {});
inline SpaceTimeField evolve_cl(const HamiltonianModel& model, const GridProfile& u0, double T, double cfl) {
    return evolve_cl(model, u0, T, EvolveOptions{cfl, {}});
}

/// Local Lax–Friedrichs scheme for U_t + H(x, U_x) = 0 on node values, with
/// the missing one-sided slope copied from the other side at the ends.
SpaceTimeField evolve_hj(const HamiltonianModel& model, const GridProfile& U0, double T, EvolveOptions opts = {});
inline SpaceTimeField evolve_hj(const HamiltonianModel& model, const GridProfile& U0, double T, double cfl) {
    return evolve_hj(model, U0, T, EvolveOptions{cfl, {}});
}

/// −S^{HJ,r}_T(−W) with Hʳ(x, p) = H(x, −p).
GridProfile evolve_hj_reversed(const HamiltonianModel& model, const GridProfile& W, double T, double cfl = 0.45);

/// Node profile → cell profile of forward differences (U_{i+1} − U_i)/dx.
GridProfile derivative(const GridProfile& U);
/// Cell profile → node profile by cumulative sums, with U(x_min) = anchor.
GridProfile primitive(const GridProfile& u, double anchor = 0.0);

/// Writes one `x,<value_name>` CSV per stored time into `dir` (named
/// `<prefix>_<k>.csv`) and an index `<prefix>_index.csv` with
/// `t,filename,shock_positions` (positions separated by ';').
void write_field(const std::filesystem::path& dir, const SpaceTimeField& field, const std::string& prefix = "u",
                 const std::string& value_name = "u");

} // namespace hjid
