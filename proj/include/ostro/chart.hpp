#pragma once

#include <functional>
#include <span>

#include "ostro/jet.hpp"

namespace ostro {

/// An explicit diffeomorphism x' = T(x) between two charts, with a partial
/// derivative oracle for the forward map. Analytic partials can be supplied;
/// the fallback is nested central differencing with per-order steps.
struct ChartTransition {
    int dim = 0;
    std::function<Vec(const Vec&)> forward;
    std::function<Vec(const Vec&)> inverse;
    /// Optional exact oracle: (x, multi-index) -> vector of d^s T^i / dx^idx.
    std::function<Vec(const Vec&, std::span<const int>)> partials;

    /// Partial derivative of the forward map (dispatches to the oracle).
    Vec partial(const Vec& x, std::span<const int> idx) const;

    /// Base Jacobian dx'^i/dx^j at x. Throws TransitionError when singular.
    Mat jacobian(const Vec& x) const;

    /// The reverse transition (forward and inverse swapped). Partials of the
    /// old inverse fall back to finite differences unless re-supplied.
    ChartTransition inverted() const;

    static ChartTransition identity(int m);
    static ChartTransition linear(const Mat& A);
};

/// T2 after T1, with composed analytic partials when both factors have them.
ChartTransition compose(const ChartTransition& outer, const ChartTransition& inner);

/// Push a jet point into primed coordinates, level by level: level a of the
/// image uses only levels <= a of the input.
JetPoint transform_jet(const ChartTransition& T, const JetPoint& pt);
ExtendedJetPoint transform_jet(const ChartTransition& T, const ExtendedJetPoint& pt);

/// Blocks M[b][a] = d(level b)'/d(level a) of the prolonged Jacobian,
/// 0 <= a <= b <= top_level (level 0 = x). Blocks above the diagonal vanish.
std::vector<std::vector<Mat>> prolonged_jacobian(const ChartTransition& T, const JetPoint& pt,
                                                 int top_level);

/// Momenta push-forward (unprimed -> primed): solves the triangular cotangent
/// system whose diagonal blocks are the base Jacobian.
PhasePoint transform_momenta(const ChartTransition& T, const PhasePoint& pt);

/// The verbatim change rule (primed -> unprimed): takes a point whose momenta
/// are expressed in the primed chart and returns unprimed momenta attached to
/// the unprimed jet.
PhasePoint pullback_momenta(const ChartTransition& T, const JetPoint& unprimed_jet,
                            const std::vector<Vec>& primed_momenta);

/// Momentum of T^(k*)M in the primed chart: p' = J^{-T} p.
DualJetPoint transform_dual(const ChartTransition& T, const DualJetPoint& pt);

/// Liouville pseudofield applied to the primed top-level coordinate
/// functions: Gamma^(k-1)(y^(k-1)i') evaluated at pt (pt has order k, so
/// levels 1..k-1 are available).
Vec gamma_of_top_primed(const ChartTransition& T, const JetPoint& pt);

/// Scalar field on T^k M coordinates with an optional per-level gradient.
struct ScalarJetField {
    int order = 1;
    int dim = 0;
    std::function<double(const ExtendedJetPoint&)> eval;
    /// Optional: gradient with respect to level a (0 = x, ..., k = top).
    std::function<Vec(const ExtendedJetPoint&, int)> grad;

    Vec gradient_level(const ExtendedJetPoint& pt, int level) const;
};

/// Gamma^(k)(f) = sum_a a * y^(a) . df/dy^(a-1) with y^(0) = x.
double liouville_apply(int k, const ScalarJetField& f, const ExtendedJetPoint& pt);

} // namespace ostro
