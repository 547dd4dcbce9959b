#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hjid/grid_profile.hpp"
#include "hjid/root_finding.hpp"

namespace hjid {

/// Polynomial potential g(x) = Σ c_k x^k on [−X, X], frozen at g(±X) outside.
/// The clamp keeps ∂ₓH = 0 for |x| ≥ X; construction checks that the first
/// derivative vanishes at ±X so the glued potential stays C¹.
class Potential {
public:
    Potential(std::vector<double> coefficients, double radius);

    /// g(x) = 1 − (1 − x²)⁴ for |x| ≤ 1, and 1 beyond.
    static Potential quartic_well();

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;
    double radius() const noexcept { return radius_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }

private:
    std::vector<double> coeffs_;
    double radius_;
};

/// Parameters of the space-dependent traffic flux V(x)·u·(1 − u/R(x)) with
/// V = v0 + dv·β(x/X), R = r0 + dr·β(x/X) and the C³ bump β(s) = (1 − s²)⁴ on
/// |s| ≤ 1 (zero outside).
struct TrafficParams {
    double v0 = 1.0;
    double dv = 0.0;
    double r0 = 1.0;
    double dr = 0.0;
    double radius = 1.0;
};

struct HamiltonianValue {
    double H;
    double dHdx;
    double dHdp;
};

struct HamiltonianHessian {
    double xx;
    double xp;
    double pp;
};

enum class ModelKind { QuadraticPotential, HomogeneousConvex, TransformedTraffic };

/// A Hamiltonian H(x, p) that is C³, convex in p with ∂ₚH(x, ·) an increasing
/// diffeomorphism of ℝ, and independent of x outside [−X, X]. Immutable.
///
/// The concave traffic flux is held in convexified form
///   H(x, p) = −H_traffic(−x, p),
/// so a solution ũ of the convexified problem maps back to the traffic problem
/// through u(t, y) = ũ(t, −y) (see `to_traffic_frame`).
class HamiltonianModel {
public:
    /// H = p²/2 + g(x).
    static HamiltonianModel quadratic_potential(Potential g);
    /// H = f(p), f a polynomial (ascending coefficients) of even degree ≥ 2,
    /// positive leading coefficient and f'' > 0. `radius` is the nominal X.
    static HamiltonianModel homogeneous(std::vector<double> flux_coefficients, double radius = 1.0);
    /// Burgers: H = p²/2.
    static HamiltonianModel burgers();
    static HamiltonianModel transformed_traffic(TrafficParams params);

    ModelKind kind() const noexcept;
    double radius() const noexcept;

    HamiltonianValue eval(double x, double p) const;
    double value(double x, double p) const { return eval(x, p).H; }
    double dp(double x, double p) const { return eval(x, p).dHdp; }
    double dx(double x, double p) const { return eval(x, p).dHdx; }
    HamiltonianHessian hessian(double x, double p) const;

    /// Hʳ(x, p) = H(x, −p). Applying it twice returns the original model.
    HamiltonianModel reversed() const;
    bool is_reversed() const noexcept { return reflect_momentum_; }

    /// Upper limit for every momentum bracket; exceeding it means the model
    /// does not behave convexly in floating point.
    double momentum_cap() const noexcept { return momentum_cap_; }
    HamiltonianModel with_momentum_cap(double cap) const;

    const Potential* potential() const noexcept;
    std::string describe() const;

private:
    struct QuadraticData {
        Potential g;
    };
    struct HomogeneousData {
        std::vector<double> f;
        std::vector<double> df;
        std::vector<double> d2f;
        double radius;
    };
    struct TrafficData {
        TrafficParams params;
    };
    using Data = std::variant<QuadraticData, HomogeneousData, TrafficData>;

    explicit HamiltonianModel(Data data) : data_(std::move(data)) {}

    Data data_;
    bool reflect_momentum_ = false;
    double momentum_cap_ = 1e8;
};

/// Maps a convexified-traffic profile back to the original concave frame (x → −x).
GridProfile to_traffic_frame(const GridProfile& convexified);

// ---------------------------------------------------------------------------
// Structural functions

/// Number of x samples on [−X, X] used by every sup/inf over x.
inline constexpr int kStructuralSamples = 4096;

/// The x sample set: kStructuralSamples points on [−X, X] plus X + 1 and −X − 1.
std::vector<double> structural_x_samples(const HamiltonianModel& model);

/// L(x, v) = sup_p (p·v − H(x, p)).
double legendre(const HamiltonianModel& model, double x, double v, RootOptions opts = {});
/// The maximiser p* of p·v − H(x, p), i.e. the root of ∂ₚH(x, p*) = v.
double legendre_momentum(const HamiltonianModel& model, double x, double v, RootOptions opts = {});

/// ǔ(x): the root of ∂ₚH(x, ·).
double critical_momentum(const HamiltonianModel& model, double x, RootOptions opts = {});

struct StructuralBounds {
    double u_lower;  // min ǔ
    double u_upper;  // max ǔ
    double K;        // max_x H(x, ǔ(x))
    double K_argmax; // sample where K is attained
};

StructuralBounds structural_bounds(const HamiltonianModel& model);

struct LevelMomenta {
    double m;
    double M;
};

/// The two solutions m < ǔ(x) < M of H(x, ·) = c. Requires c > K.
LevelMomenta level_momenta(const HamiltonianModel& model, double x, double c);
LevelMomenta level_momenta(const HamiltonianModel& model, const StructuralBounds& bounds, double x, double c);

struct SpeedBounds {
    double v; // sup_x ∂ₚH(x, m(x, c))
    double V; // inf_x ∂ₚH(x, M(x, c))
};

SpeedBounds speed_bounds(const HamiltonianModel& model, double c);
SpeedBounds speed_bounds(const HamiltonianModel& model, const StructuralBounds& bounds, double c);

/// Numerical stand-in for the coercivity function: min over sampled x and both
/// signs of H(x, ±r).
double coercivity_lower_bound(const HamiltonianModel& model, double r);

struct RaySpeedBound {
    double value;       // C_{H,W}: smallest sampled r past which φ(r)/(1+r) > rhs
    double rhs;         // sup_{|p|≤‖W'‖, q}|H| + sup_{|v|≤1, q}|L|
    double w_lipschitz; // ‖W'‖∞ used
    bool found;         // false when the search hit `cap` (value is then `cap`)
};

RaySpeedBound ray_speed_bound(const HamiltonianModel& model, double w_lipschitz, double cap = 1e6);
RaySpeedBound ray_speed_bound(const HamiltonianModel& model, const GridProfile& W, double cap = 1e6);

} // namespace hjid
