#include "ostro/duality.hpp"

#include <cmath>

#include "ostro/fd.hpp"

namespace ostro {

namespace {

/// Damped Newton on F(v) = 0 with Jacobian J(v). Backtracks on the max-norm
/// of F; optionally reseeds from a coarse grid around the origin.
Vec damped_newton(const std::function<Vec(const Vec&)>& F, const std::function<Mat(const Vec&)>& J,
                  Vec v, const NewtonConfig& cfg) {
    cfg.validate();
    auto run = [&](Vec w, double* out_res) -> std::pair<bool, Vec> {
        double res = norm_inf(F(w));
        for (int it = 0; it < cfg.max_iterations; ++it) {
            if (res <= cfg.tolerance) {
                *out_res = res;
                return {true, w};
            }
            Vec step = lu_solve(J(w), F(w));
            double lambda = 1.0;
            bool improved = false;
            for (int half = 0; half <= cfg.max_halvings; ++half) {
                Vec trial = w - lambda * step;
                double tres = norm_inf(F(trial));
                if (tres < res) {
                    w = std::move(trial);
                    res = tres;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!improved) break;
        }
        *out_res = res;
        return {res <= cfg.tolerance, w};
    };

    double res = 0.0;
    auto [ok, w] = run(v, &res);
    if (ok) return w;
    if (cfg.grid_fallback) {
        // coarse seeding over a modest box around the origin
        const int n = static_cast<int>(v.size());
        Vec best_seed = v;
        double best = res;
        const double radii[] = {1.0, 4.0, 16.0};
        for (double r : radii) {
            std::vector<int> idx(n, 0);
            const int nodes = 5;
            while (true) {
                Vec seed(n);
                for (int i = 0; i < n; ++i) seed[i] = -r + 2.0 * r * idx[i] / (nodes - 1);
                double s = norm_inf(F(seed));
                if (s < best) {
                    best = s;
                    best_seed = seed;
                }
                int i = n - 1;
                while (i >= 0 && ++idx[i] == nodes) idx[i--] = 0;
                if (i < 0) break;
            }
        }
        auto [ok2, w2] = run(best_seed, &res);
        if (ok2) return w2;
    }
    throw ConvergenceError("Newton did not converge within budget", res);
}

} // namespace

DualJetPoint legendre_map(const LagrangianModel& L, const ExtendedJetPoint& pt) {
    return DualJetPoint(pt.jet, L.gradient_level(pt, L.order));
}

ExtendedJetPoint legendre_inverse(const LagrangianModel& L, const DualJetPoint& pt,
                                  const NewtonConfig& cfg) {
    auto F = [&](const Vec& v) {
        ExtendedJetPoint e(pt.jet, v);
        return L.gradient_level(e, L.order) - pt.pk;
    };
    auto J = [&](const Vec& v) { return L.vertical_hessian(ExtendedJetPoint(pt.jet, v)); };
    Vec top = damped_newton(F, J, Vec(L.dim, 0.0), cfg);
    return ExtendedJetPoint(pt.jet, std::move(top));
}

ExtendedJetPoint legendre_star_map(const AffineHamiltonianModel& h, const DualJetPoint& pt) {
    return ExtendedJetPoint(pt.jet, h.gradient_p(pt));
}

DualJetPoint legendre_star_inverse(const AffineHamiltonianModel& h, const ExtendedJetPoint& pt,
                                   const NewtonConfig& cfg) {
    auto F = [&](const Vec& p) {
        DualJetPoint d(pt.jet, p);
        return h.gradient_p(d) - pt.top;
    };
    auto J = [&](const Vec& p) { return h.vertical_hessian(DualJetPoint(pt.jet, p)); };
    Vec p = damped_newton(F, J, Vec(h.dim, 0.0), cfg);
    return DualJetPoint(pt.jet, std::move(p));
}

AffineHamiltonianModel dual_affine_hamiltonian(const LagrangianModel& L, const NewtonConfig& cfg) {
    AffineHamiltonianModel h;
    h.order = L.order;
    h.dim = L.dim;
    h.hyperregular = L.hyperregular;
    LagrangianModel Lc = L;
    NewtonConfig cc = cfg;
    h.h0 = [Lc, cc](const DualJetPoint& pt) {
        ExtendedJetPoint e = legendre_inverse(Lc, pt, cc);
        return dot(pt.pk, e.top) - Lc(e);
    };
    h.grad_p = [Lc, cc](const DualJetPoint& pt) { return legendre_inverse(Lc, pt, cc).top; };
    h.grad = [Lc, cc](const DualJetPoint& pt, int level) {
        ExtendedJetPoint e = legendre_inverse(Lc, pt, cc);
        return -1.0 * Lc.gradient_level(e, level);
    };
    h.vhess = [Lc, cc](const DualJetPoint& pt) {
        ExtendedJetPoint e = legendre_inverse(Lc, pt, cc);
        return inverse(Lc.vertical_hessian(e));
    };
    return h;
}

LagrangianModel dual_lagrangian(const AffineHamiltonianModel& h, const NewtonConfig& cfg) {
    LagrangianModel L;
    L.order = h.order;
    L.dim = h.dim;
    L.hyperregular = h.hyperregular;
    AffineHamiltonianModel hc = h;
    NewtonConfig cc = cfg;
    L.eval = [hc, cc](const ExtendedJetPoint& pt) {
        DualJetPoint d = legendre_star_inverse(hc, pt, cc);
        return dot(pt.top, d.pk) - hc(d);
    };
    L.grad = [hc, cc](const ExtendedJetPoint& pt, int level) {
        if (level == pt.jet.order) return legendre_star_inverse(hc, pt, cc).pk;
        DualJetPoint d = legendre_star_inverse(hc, pt, cc);
        return -1.0 * hc.gradient_level(d, level);
    };
    L.vhess = [hc, cc](const ExtendedJetPoint& pt) {
        DualJetPoint d = legendre_star_inverse(hc, pt, cc);
        return inverse(hc.vertical_hessian(d));
    };
    return L;
}

FenchelResult fenchel_h0(const LagrangianModel& L, const DualJetPoint& pt, const FenchelSearch& search) {
    const int m = L.dim;
    if (static_cast<int>(search.lo.size()) != m || static_cast<int>(search.hi.size()) != m)
        throw ArgumentError("fenchel_h0: box dimension mismatch");
    if (search.resolution < 2) throw ArgumentError("fenchel_h0: resolution must be >= 2");

    auto phi = [&](const Vec& v) {
        ExtendedJetPoint e(pt.jet, v);
        return dot(pt.pk, v) - L(e);
    };

    // grid seed
    Vec best;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(m, 0);
    while (true) {
        Vec v(m);
        for (int i = 0; i < m; ++i)
            v[i] = search.lo[i] + (search.hi[i] - search.lo[i]) * idx[i] / (search.resolution - 1);
        double val = phi(v);
        if (val > best_val) {
            best_val = val;
            best = v;
        }
        int i = m - 1;
        while (i >= 0 && ++idx[i] == search.resolution) idx[i--] = 0;
        if (i < 0) break;
    }

    // Newton polish on the stationarity condition p - dL/dy^(k) = 0
    auto F = [&](const Vec& v) {
        ExtendedJetPoint e(pt.jet, v);
        return L.gradient_level(e, L.order) - pt.pk;
    };
    auto J = [&](const Vec& v) { return L.vertical_hessian(ExtendedJetPoint(pt.jet, v)); };
    NewtonConfig polish = search.polish;
    polish.grid_fallback = false;
    Vec arg = damped_newton(F, J, best, polish);

    for (int i = 0; i < m; ++i) {
        const double span = search.hi[i] - search.lo[i];
        if (arg[i] <= search.lo[i] + 1e-9 * span || arg[i] >= search.hi[i] - 1e-9 * span)
            throw BoxError("fenchel_h0: argmax on box boundary; enlarge the box");
    }
    return FenchelResult{phi(arg), arg};
}

AffineHamiltonianModel affine_from_vectorial(const VectorialHamiltonianModel& H, const AffineSection& s) {
    if (H.order != s.order || H.dim != s.dim)
        throw ArgumentError("affine_from_vectorial: arity mismatch");
    AffineHamiltonianModel h = H;
    VectorialHamiltonianModel Hc = H;
    AffineSection sc = s;
    h.h0 = [Hc, sc](const DualJetPoint& pt) { return Hc(pt) + dot(sc(pt.jet), pt.pk); };
    h.grad_p = [Hc, sc](const DualJetPoint& pt) { return Hc.gradient_p(pt) + sc(pt.jet); };
    h.grad = [Hc, sc](const DualJetPoint& pt, int level) {
        Vec g = Hc.gradient_level(pt, level);
        return g + matvec_t(sc.gradient_level(pt.jet, level), pt.pk);
    };
    h.vhess = [Hc](const DualJetPoint& pt) { return Hc.vertical_hessian(pt); };
    return h;
}

VectorialHamiltonianModel vectorial_from_affine(const AffineHamiltonianModel& h, const AffineSection& s) {
    if (h.order != s.order || h.dim != s.dim)
        throw ArgumentError("vectorial_from_affine: arity mismatch");
    VectorialHamiltonianModel H = h;
    AffineHamiltonianModel hc = h;
    AffineSection sc = s;
    H.h0 = [hc, sc](const DualJetPoint& pt) { return hc(pt) - dot(sc(pt.jet), pt.pk); };
    H.grad_p = [hc, sc](const DualJetPoint& pt) { return hc.gradient_p(pt) - sc(pt.jet); };
    H.grad = [hc, sc](const DualJetPoint& pt, int level) {
        Vec g = hc.gradient_level(pt, level);
        return g - matvec_t(sc.gradient_level(pt.jet, level), pt.pk);
    };
    H.vhess = [hc](const DualJetPoint& pt) { return hc.vertical_hessian(pt); };
    return H;
}

LagrangianModel pullback_lagrangian(const LagrangianModel& L, const ChartTransition& into_old) {
    LagrangianModel Lp;
    Lp.order = L.order;
    Lp.dim = L.dim;
    Lp.hyperregular = L.hyperregular;
    LagrangianModel Lc = L;
    ChartTransition S = into_old;
    Lp.eval = [Lc, S](const ExtendedJetPoint& pt) { return Lc(transform_jet(S, pt)); };
    Lp.grad = [Lc, S](const ExtendedJetPoint& pt, int level) {
        ExtendedJetPoint q = transform_jet(S, pt);
        // chain rule through the prolonged Jacobian of the new -> old transform,
        // evaluated at the new-chart point
        std::vector<Vec> levels = pt.jet.y;
        levels.push_back(pt.top);
        JetPoint full(pt.jet.order + 1, pt.jet.x, std::move(levels));
        auto M = prolonged_jacobian(S, full, pt.jet.order);
        Vec g(Lc.dim, 0.0);
        for (int b = level; b <= Lc.order; ++b) {
            Vec gl = Lc.gradient_level(q, b);
            g += matvec_t(M[b][level], gl);
        }
        return g;
    };
    Lp.vhess = [Lc, S](const ExtendedJetPoint& pt) {
        ExtendedJetPoint q = transform_jet(S, pt);
        Mat J = S.jacobian(pt.jet.x); // d(old base)/d(new base)
        return matmul(transpose(J), matmul(Lc.vertical_hessian(q), J));
    };
    return Lp;
}

AffineHamiltonianModel transport_hamiltonian(const AffineHamiltonianModel& h, const ChartTransition& T,
                                             const ChartTransition* into_old) {
    AffineHamiltonianModel hp;
    hp.order = h.order;
    hp.dim = h.dim;
    hp.hyperregular = h.hyperregular;
    AffineHamiltonianModel hc = h;
    ChartTransition fwd = T;
    ChartTransition back = into_old ? *into_old : T.inverted();
    const int k = h.order;
    hp.h0 = [hc, fwd, back, k](const DualJetPoint& primed) {
        JetPoint jet = transform_jet(back, primed.jet);
        Mat J = fwd.jacobian(jet.x);
        Vec p = matvec_t(J, primed.pk); // unprimed momentum
        Vec gamma = gamma_of_top_primed(fwd, jet);
        return hc(DualJetPoint(jet, p)) + dot(gamma, primed.pk) / k;
    };
    return hp;
}

double h0_change_residual(const AffineHamiltonianModel& h_unprimed,
                          const AffineHamiltonianModel& h_primed, const ChartTransition& T,
                          const DualJetPoint& pt) {
    DualJetPoint primed = transform_dual(T, pt);
    Vec gamma = gamma_of_top_primed(T, pt.jet);
    const double correction = dot(gamma, primed.pk) / h_unprimed.order;
    return h_primed(primed) - h_unprimed(pt) - correction;
}

} // namespace ostro
