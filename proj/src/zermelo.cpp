#include "ostro/zermelo.hpp"

namespace ostro {

double zermelo_residual_primary(const AffineHamiltonianModel& h, const DualJetPoint& pt) {
    if (h.order < 2) throw ArgumentError("zermelo_residual_primary: requires order >= 2");
    double r = h(pt);
    for (int a = 1; a <= h.order - 1; ++a)
        r -= a * dot(pt.jet.level(a), h.gradient_level(pt, a));
    return r;
}

double zermelo_residual_alpha(const AffineHamiltonianModel& h, const DualJetPoint& pt, int alpha) {
    const int k = h.order;
    if (alpha < 2 || alpha > k - 1)
        throw ArgumentError("zermelo_residual_alpha: alpha must lie in 2..k-1");
    double r = alpha * dot(pt.pk, pt.jet.level(alpha));
    for (int b = 1; b <= alpha - 1; ++b)
        r -= b * dot(pt.jet.level(b), h.gradient_level(pt, b + k - alpha));
    return r;
}

std::vector<int> zermelo_alpha_range(int k) {
    std::vector<int> r;
    for (int a = 2; a <= k - 1; ++a) r.push_back(a);
    return r;
}

double zermelo_curve_condition(const Vec& xdot, const Vec& p) { return dot(p, xdot); }

CotangentCurve reparametrize(const CotangentCurve& gamma, const Reparametrization& phi) {
    Curve phic = phi.as_curve();
    Curve xc = gamma.x.compose(phic);
    Curve pc = gamma.p;
    Reparametrization ph = phi;
    Curve pcomp = Curve::analytic(gamma.p.dim(), [pc, ph](double t) { return pc(ph(t)); });
    return CotangentCurve{std::move(xc), std::move(pcomp)};
}

double reparametrization_gap(const AffineHamiltonianModel& h, const CotangentCurve& gamma,
                             const Reparametrization& phi, const QuadratureConfig& quad) {
    CotangentCurve composed = reparametrize(gamma, phi);
    return action_affine(h, composed, quad) - action_affine(h, gamma, quad);
}

} // namespace ostro
