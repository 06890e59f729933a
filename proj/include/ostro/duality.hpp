#pragma once

#include "ostro/chart.hpp"
#include "ostro/models.hpp"

namespace ostro {

/// p = dL/dy^(k) at pt; base jet copied.
DualJetPoint legendre_map(const LagrangianModel& L, const ExtendedJetPoint& pt);

/// Invert the Legendre map: find y^(k) with dL/dy^(k) = pk, by damped Newton
/// on the vertical hessian. Throws ConvergenceError / RegularityError.
ExtendedJetPoint legendre_inverse(const LagrangianModel& L, const DualJetPoint& pt,
                                  const NewtonConfig& cfg = {});

/// y^(k) = dH0/dp at pt.
ExtendedJetPoint legendre_star_map(const AffineHamiltonianModel& h, const DualJetPoint& pt);

/// Invert the Legendre* map: find p with dH0/dp = y^(k) (Newton on h^{ij}).
DualJetPoint legendre_star_inverse(const AffineHamiltonianModel& h, const ExtendedJetPoint& pt,
                                   const NewtonConfig& cfg = {});

/// The dual affine Hamiltonian of a hyperregular L:
///   H0(x, y, p) = p_j H^j - L(x, y, H)  with H = legendre_inverse.
/// The derivative oracle is composed through the envelope identities
/// (dH0/dp = H^i, dH0/d(level) = -dL/d(level), h^{ij} = g^{ij} inverse).
AffineHamiltonianModel dual_affine_hamiltonian(const LagrangianModel& L,
                                               const NewtonConfig& cfg = {});

/// The dual Lagrangian of a hyperregular h:
///   L(x, y, y^(k)) = y^(k)j L_j - H0(x, y, L)  with L_j = legendre_star_inverse.
LagrangianModel dual_lagrangian(const AffineHamiltonianModel& h, const NewtonConfig& cfg = {});

/// Search settings for the direct convex-conjugate evaluation.
struct FenchelSearch {
    Vec lo;            ///< box lower corner in the y^(k) fiber
    Vec hi;            ///< box upper corner
    int resolution = 21; ///< grid nodes per axis for seeding
    NewtonConfig polish{};
};

struct FenchelResult {
    double value = 0.0;
    Vec argmax;
};

/// max over the box of p . y^(k) - L(...), grid-seeded and Newton-polished.
/// Throws BoxError when the argmax sits on the box boundary.
FenchelResult fenchel_h0(const LagrangianModel& L, const DualJetPoint& pt, const FenchelSearch& search);

/// H0 = H + s . p: affine Hamiltonian from a vectorial one and a section.
AffineHamiltonianModel affine_from_vectorial(const VectorialHamiltonianModel& H, const AffineSection& s);

/// H = H0 - s . p: the inverse construction.
VectorialHamiltonianModel vectorial_from_affine(const AffineHamiltonianModel& h, const AffineSection& s);

/// L expressed in a new chart. `into_old` maps the new chart onto L's chart;
/// its prolonged transform carries points and its Jacobian blocks carry the
/// partials, so an analytic `into_old` keeps the result analytic.
LagrangianModel pullback_lagrangian(const LagrangianModel& L, const ChartTransition& into_old);

/// The primed-chart local function of the same affine Hamiltonian:
/// H0'(pt') = H0(pt) + (1/k) Gamma^(k-1)(y^(k-1)') . p'.
/// `T` maps h's chart to the primed chart, `into_old` is its inverse
/// (defaulted from T when omitted; pass an analytic one when available).
AffineHamiltonianModel transport_hamiltonian(const AffineHamiltonianModel& h, const ChartTransition& T,
                                             const ChartTransition* into_old = nullptr);

/// Residual of the affine change rule between two registered chart
/// representations, evaluated at an unprimed point.
double h0_change_residual(const AffineHamiltonianModel& h_unprimed,
                          const AffineHamiltonianModel& h_primed, const ChartTransition& T,
                          const DualJetPoint& pt);

} // namespace ostro
