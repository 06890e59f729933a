#pragma once

#include <string>

#include "ostro/curve.hpp"
#include "ostro/duality.hpp"

namespace ostro {

/// Time-stamped states of one Hamilton-flow integration.
struct Trajectory {
    std::vector<double> times;
    std::vector<PhasePoint> states;
    std::string method;
    double dt = 0.0;
    int order = 1;
    int dim = 0;

    size_t size() const { return times.size(); }

    /// Component series: coordinates of one level across all states.
    std::vector<double> series(int level, int i, bool momentum = false) const;

    /// Positions as a sampled curve (uniform stride over the stored grid).
    Curve x_curve() const;
};

struct IntegratorConfig {
    enum class Method { RK4, RK4StepDoubling };
    Method method = Method::RK4;
    double dt = 1e-3;
    double t0 = 0.0;
    double t1 = 1.0;
    int stride = 1;              ///< store every stride-th step
    double adaptive_tol = 1e-10; ///< local error target for step doubling

    void validate() const {
        if (dt <= 0.0) throw ArgumentError("IntegratorConfig: dt must be positive");
        if (t1 <= t0) throw ArgumentError("IntegratorConfig: t1 must exceed t0");
        if (stride < 1) throw ArgumentError("IntegratorConfig: stride must be >= 1");
    }
};

/// Domain exit mid-flow; carries whatever was integrated before the failure.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& msg, Trajectory partial)
        : std::runtime_error(msg), partial(std::move(partial)) {}
    Trajectory partial;
};

/// E0 = sum_{a=1}^{k-1} a p_(a-1) . y^(a) + k H0(x, y, p_(k-1)).
double energy(const AffineHamiltonianModel& h, const PhasePoint& pt);

/// The same energy computed from a Lagrangian through its Legendre inversion.
double energy_from_lagrangian(const LagrangianModel& L, const PhasePoint& pt,
                              const NewtonConfig& cfg = {});

/// Right-hand side of the Hamilton equation in vectorial form, as deltas.
PhasePoint hamilton_rhs(const AffineHamiltonianModel& h, const PhasePoint& pt);
Vec hamilton_rhs_flat(const AffineHamiltonianModel& h, int order, int dim, const Vec& state);

Trajectory integrate(const AffineHamiltonianModel& h, const PhasePoint& init,
                     const IntegratorConfig& cfg);

/// CSV export: header t,x1..xm,y1_1..y1_m,...,p0_1..p0_m,..., 17 significant
/// digits, LF line endings.
void write_csv(const Trajectory& traj, std::ostream& out);
void write_csv(const Trajectory& traj, const std::string& path);

/// A curve on T*M: positions and momenta as separate paths.
struct CotangentCurve {
    Curve x;
    Curve p;
};

/// A curve on T*T^(k-1)M with a derivative oracle over the flattened state.
struct PhaseCurve {
    int order = 1;
    int dim = 0;
    Curve flat;

    PhasePoint at(double t) const { return PhasePoint::unflatten(order, dim, flat(t)); }

    static PhaseCurve from_closure(int k, int m, std::function<PhasePoint(double)> f);
    static PhaseCurve from_trajectory(const Trajectory& traj);
};

struct QuadratureConfig {
    int intervals = 512; ///< composite-Simpson panels (forced even)
    double t0 = 0.0;
    double t1 = 1.0;
};

/// Integral action of h along a curve on T*M.
double action_affine(const AffineHamiltonianModel& h, const CotangentCurve& gamma,
                     const QuadratureConfig& quad = {});

/// Integral action of the energy along a curve on T*T^(k-1)M.
double action_energy(const AffineHamiltonianModel& h, const PhaseCurve& Gamma,
                     const QuadratureConfig& quad = {});

/// Both lines of the condensed Hamilton equation along gamma at the sample
/// times; first = momentum line, second = velocity line. `spacing` is the
/// stencil spacing for the total time derivatives.
std::vector<std::pair<Vec, Vec>> hamilton_residual_condensed(const AffineHamiltonianModel& h,
                                                             const CotangentCurve& gamma,
                                                             const std::vector<double>& ts,
                                                             double spacing = 1e-2);

/// Alternating factorial-weighted Euler-Lagrange sum along the prolonged
/// curve, one m-vector per sample time.
std::vector<Vec> euler_lagrange_residual(const LagrangianModel& L, const Curve& x,
                                         const std::vector<double>& ts, double spacing = 1e-2);

struct DualityReport {
    double max_energy_gap = 0.0;
    double max_rhs_gap = 0.0;
    double max_el_residual = 0.0;
};

/// Cross-checks a Lagrangian against a claimed dual Hamiltonian: energy gap
/// over the sample points, Hamilton-RHS gap, and the Euler-Lagrange residual
/// of the trajectory's projection.
DualityReport verify_duality(const LagrangianModel& L, const AffineHamiltonianModel& h,
                             const std::vector<PhasePoint>& pts, const Trajectory& traj,
                             const NewtonConfig& cfg = {}, double el_spacing = 2e-2);

/// Lift of a cotangent curve through a section of the phase projection:
/// the section supplies p_(0..k-2) as functions of the dual jet point.
PhaseCurve lift_curve_via_section(const CotangentCurve& gamma, int k,
                                  std::function<std::vector<Vec>(const DualJetPoint&)> section);

/// Max |E(t) - E(0)| along a trajectory.
double energy_drift(const AffineHamiltonianModel& h, const Trajectory& traj);

} // namespace ostro
