#pragma once

#include "ostro/dynamics.hpp"

namespace ostro {

/// H0 - sum_{a=1}^{k-1} a y^(a) . dH0/dy^(a). Zero for every point only when
/// H0 is 1-homogeneous under the weighted jet scaling; generically nonzero
/// (the residuals are audit values, not assertions). Requires k >= 2.
double zermelo_residual_primary(const AffineHamiltonianModel& h, const DualJetPoint& pt);

/// a p . y^(a) - sum_{b=1}^{a-1} b y^(b) . dH0/dy^(b+k-a), the order-a
/// reparametrization condition, for a = 2..k-1 (nonempty only when k >= 3).
double zermelo_residual_alpha(const AffineHamiltonianModel& h, const DualJetPoint& pt, int alpha);

/// Indices a for which zermelo_residual_alpha is defined (empty for k <= 2).
std::vector<int> zermelo_alpha_range(int k);

/// p . dx/dt, the curve-side condition.
double zermelo_curve_condition(const Vec& xdot, const Vec& p);

/// action_affine(gamma o phi) - action_affine(gamma): the ground-truth
/// oracle for all residual operators.
double reparametrization_gap(const AffineHamiltonianModel& h, const CotangentCurve& gamma,
                             const Reparametrization& phi, const QuadratureConfig& quad = {});

/// Reparametrize a cotangent curve (positions composed with derivatives,
/// momenta composed by value).
CotangentCurve reparametrize(const CotangentCurve& gamma, const Reparametrization& phi);

} // namespace ostro
