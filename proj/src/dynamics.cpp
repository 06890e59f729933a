#include "ostro/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ostro/fd.hpp"

namespace ostro {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

DualJetPoint top_slice(const PhasePoint& pt) { return DualJetPoint(pt.jet, pt.p.back()); }

} // namespace

std::vector<double> Trajectory::series(int level, int i, bool momentum) const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const PhasePoint& s : states)
        out.push_back(momentum ? s.p[level][i] : s.jet.level(level)[i]);
    return out;
}

Curve Trajectory::x_curve() const {
    std::vector<Vec> xs;
    xs.reserve(states.size());
    for (const PhasePoint& s : states) xs.push_back(s.jet.x);
    const double spacing = times.size() > 1 ? times[1] - times[0] : dt;
    return Curve::sampled(dim, times.empty() ? 0.0 : times.front(), spacing, std::move(xs));
}

double energy(const AffineHamiltonianModel& h, const PhasePoint& pt) {
    const int k = pt.jet.order;
    double e = k * h(top_slice(pt));
    for (int a = 1; a <= k - 1; ++a) e += a * dot(pt.p[a - 1], pt.jet.level(a));
    return e;
}

double energy_from_lagrangian(const LagrangianModel& L, const PhasePoint& pt, const NewtonConfig& cfg) {
    const int k = pt.jet.order;
    DualJetPoint d = top_slice(pt);
    ExtendedJetPoint e = legendre_inverse(L, d, cfg);
    double val = k * dot(d.pk, e.top) - k * L(e);
    for (int a = 1; a <= k - 1; ++a) val += a * dot(pt.p[a - 1], pt.jet.level(a));
    return val;
}

PhasePoint hamilton_rhs(const AffineHamiltonianModel& h, const PhasePoint& pt) {
    const int k = pt.jet.order;
    const int m = pt.jet.dim;
    DualJetPoint d = top_slice(pt);

    JetPoint djet;
    djet.order = k;
    djet.dim = m;
    // d(level a)/dt = (a+1) * level(a+1) for a = 0..k-2, top level from H0
    std::vector<Vec> levels(k);
    for (int a = 0; a <= k - 2; ++a) levels[a] = (a + 1.0) * pt.jet.level(a + 1);
    levels[k - 1] = static_cast<double>(k) * h.gradient_p(d);
    djet.x = levels[0];
    for (int a = 1; a <= k - 1; ++a) djet.y.push_back(levels[a]);

    std::vector<Vec> dp(k);
    for (int a = 0; a <= k - 1; ++a) {
        dp[a] = -static_cast<double>(k) * h.gradient_level(d, a);
        if (a >= 1)
            for (int i = 0; i < m; ++i) dp[a][i] -= a * pt.p[a - 1][i];
    }
    return PhasePoint(std::move(djet), std::move(dp));
}

Vec hamilton_rhs_flat(const AffineHamiltonianModel& h, int order, int dim, const Vec& state) {
    return hamilton_rhs(h, PhasePoint::unflatten(order, dim, state)).flatten();
}

namespace {

Vec rk4_step(const AffineHamiltonianModel& h, int k, int m, const Vec& s, double dt) {
    Vec k1 = hamilton_rhs_flat(h, k, m, s);
    Vec k2 = hamilton_rhs_flat(h, k, m, s + (0.5 * dt) * k1);
    Vec k3 = hamilton_rhs_flat(h, k, m, s + (0.5 * dt) * k2);
    Vec k4 = hamilton_rhs_flat(h, k, m, s + dt * k3);
    Vec out(s.size());
    for (size_t i = 0; i < s.size(); ++i)
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

} // namespace

Trajectory integrate(const AffineHamiltonianModel& h, const PhasePoint& init,
                     const IntegratorConfig& cfg) {
    cfg.validate();
    if (init.jet.order != h.order || init.jet.dim != h.dim)
        throw ArgumentError("integrate: initial point does not match the model");
    const int k = h.order, m = h.dim;

    Trajectory traj;
    traj.method = cfg.method == IntegratorConfig::Method::RK4 ? "rk4" : "rk4-step-doubling";
    traj.dt = cfg.dt;
    traj.order = k;
    traj.dim = m;
    traj.times.push_back(cfg.t0);
    traj.states.push_back(init);

    Vec s = init.flatten();
    const long nsteps = std::lround((cfg.t1 - cfg.t0) / cfg.dt);
    try {
        if (cfg.method == IntegratorConfig::Method::RK4) {
            for (long n = 1; n <= nsteps; ++n) {
                s = rk4_step(h, k, m, s, cfg.dt);
                if (n % cfg.stride == 0 || n == nsteps) {
                    traj.times.push_back(cfg.t0 + n * cfg.dt);
                    traj.states.push_back(PhasePoint::unflatten(k, m, s));
                }
            }
        } else {
            // step doubling: compare one dt step against two dt/2 steps
            double t = cfg.t0;
            double dt = cfg.dt;
            long stored = 0;
            while (t < cfg.t1 - 1e-15) {
                dt = std::min(dt, cfg.t1 - t);
                Vec full = rk4_step(h, k, m, s, dt);
                Vec half = rk4_step(h, k, m, rk4_step(h, k, m, s, 0.5 * dt), 0.5 * dt);
                double err = 0.0;
                for (size_t i = 0; i < s.size(); ++i)
                    err = std::max(err, std::abs(full[i] - half[i]) / 15.0);
                if (err > cfg.adaptive_tol && dt > 1e-12) {
                    dt *= 0.5;
                    continue;
                }
                s = half;
                t += dt;
                if (++stored % cfg.stride == 0 || t >= cfg.t1 - 1e-15) {
                    traj.times.push_back(t);
                    traj.states.push_back(PhasePoint::unflatten(k, m, s));
                }
                if (err < cfg.adaptive_tol / 64.0) dt *= 2.0;
            }
        }
    } catch (const DomainError& e) {
        throw IntegrationError(std::string("domain exit during integration: ") + e.what(),
                               std::move(traj));
    }
    return traj;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    const int k = traj.order, m = traj.dim;
    out << "t";
    char buf[40];
    for (int i = 1; i <= m; ++i) out << ",x" << i;
    for (int a = 1; a <= k - 1; ++a)
        for (int i = 1; i <= m; ++i) out << ",y" << a << "_" << i;
    for (int a = 0; a <= k - 1; ++a)
        for (int i = 1; i <= m; ++i) out << ",p" << a << "_" << i;
    out << "\n";
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (size_t r = 0; r < traj.size(); ++r) {
        emit(traj.times[r]);
        const PhasePoint& s = traj.states[r];
        for (int a = 0; a <= k - 1; ++a)
            for (int i = 0; i < m; ++i) {
                out << ",";
                emit(s.jet.level(a)[i]);
            }
        for (int a = 0; a <= k - 1; ++a)
            for (int i = 0; i < m; ++i) {
                out << ",";
                emit(s.p[a][i]);
            }
        out << "\n";
    }
}

void write_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(traj, f);
}

PhaseCurve PhaseCurve::from_closure(int k, int m, std::function<PhasePoint(double)> f) {
    PhaseCurve pc;
    pc.order = k;
    pc.dim = m;
    pc.flat = Curve::analytic(2 * k * m, [f](double t) { return f(t).flatten(); });
    return pc;
}

PhaseCurve PhaseCurve::from_trajectory(const Trajectory& traj) {
    PhaseCurve pc;
    pc.order = traj.order;
    pc.dim = traj.dim;
    std::vector<Vec> vals;
    vals.reserve(traj.size());
    for (const PhasePoint& s : traj.states) vals.push_back(s.flatten());
    const double spacing = traj.times.size() > 1 ? traj.times[1] - traj.times[0] : traj.dt;
    pc.flat = Curve::sampled(2 * traj.order * traj.dim, traj.times.front(), spacing, std::move(vals));
    return pc;
}

namespace {

double simpson(const std::function<double(double)>& f, const QuadratureConfig& quad) {
    int n = quad.intervals;
    if (n < 2) n = 2;
    if (n % 2 != 0) ++n;
    const double h = (quad.t1 - quad.t0) / n;
    double s = f(quad.t0) + f(quad.t1);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(quad.t0 + i * h);
    return s * h / 3.0;
}

} // namespace

double action_affine(const AffineHamiltonianModel& h, const CotangentCurve& gamma,
                     const QuadratureConfig& quad) {
    const int k = h.order;
    auto integrand = [&](double t) {
        std::vector<Vec> jets = gamma.x.jets(t, k); // jets[a] = x^(a)/a!
        JetPoint jet(k, jets[0], std::vector<Vec>(jets.begin() + 1, jets.begin() + k));
        Vec p = gamma.p(t);
        // p . (1/(k-1)!) x^(k) = k p . y^(k)
        double val = k * dot(p, jets[k]);
        val -= k * h(DualJetPoint(std::move(jet), std::move(p)));
        return val;
    };
    return simpson(integrand, quad);
}

double action_energy(const AffineHamiltonianModel& h, const PhaseCurve& Gamma,
                     const QuadratureConfig& quad) {
    const int k = Gamma.order, m = Gamma.dim;
    auto integrand = [&](double t) {
        PhasePoint pt = PhasePoint::unflatten(k, m, Gamma.flat(t));
        Vec rate = Gamma.flat.derivative(t, 1);
        double val = 0.0;
        for (int a = 0; a <= k - 1; ++a)
            for (int i = 0; i < m; ++i) val += pt.p[a][i] * rate[a * m + i];
        return val - energy(h, pt);
    };
    return simpson(integrand, quad);
}

std::vector<std::pair<Vec, Vec>> hamilton_residual_condensed(const AffineHamiltonianModel& h,
                                                             const CotangentCurve& gamma,
                                                             const std::vector<double>& ts,
                                                             double spacing) {
    const int k = h.order, m = h.dim;
    auto dual_at = [&](double t) {
        std::vector<Vec> jets = gamma.x.jets(t, k - 1);
        JetPoint jet(k, jets[0], std::vector<Vec>(jets.begin() + 1, jets.end()));
        return DualJetPoint(std::move(jet), gamma.p(t));
    };

    std::vector<std::pair<Vec, Vec>> out;
    out.reserve(ts.size());
    for (double t : ts) {
        // momentum line
        Vec r1 = (std::pow(-1.0, k) / factorial(k)) * gamma.p.derivative(t, k);
        for (int a = 0; a <= k - 1; ++a) {
            auto g = [&](double s) { return h.gradient_level(dual_at(s), a); };
            Vec d = fd::curve_derivative(g, t, a, spacing);
            const double w = std::pow(-1.0, a + 1) / factorial(a);
            for (int i = 0; i < m; ++i) r1[i] += w * d[i];
        }
        // velocity line
        Vec r2 = (1.0 / factorial(k)) * gamma.x.derivative(t, k);
        Vec gp = h.gradient_p(dual_at(t));
        for (int i = 0; i < m; ++i) r2[i] -= gp[i];
        out.emplace_back(std::move(r1), std::move(r2));
    }
    return out;
}

std::vector<Vec> euler_lagrange_residual(const LagrangianModel& L, const Curve& x,
                                         const std::vector<double>& ts, double spacing) {
    const int k = L.order, m = L.dim;
    auto prolonged = [&](double t) { return prolong_curve(x, k, t); };

    std::vector<Vec> out;
    out.reserve(ts.size());
    for (double t : ts) {
        Vec r(m, 0.0);
        for (int a = 0; a <= k; ++a) {
            auto g = [&](double s) { return L.gradient_level(prolonged(s), a); };
            Vec d = fd::curve_derivative(g, t, a, spacing);
            const double w = std::pow(-1.0, a) / factorial(a);
            for (int i = 0; i < m; ++i) r[i] += w * d[i];
        }
        out.push_back(std::move(r));
    }
    return out;
}

DualityReport verify_duality(const LagrangianModel& L, const AffineHamiltonianModel& h,
                             const std::vector<PhasePoint>& pts, const Trajectory& traj,
                             const NewtonConfig& cfg, double el_spacing) {
    DualityReport rep;
    AffineHamiltonianModel hL = dual_affine_hamiltonian(L, cfg);
    for (const PhasePoint& pt : pts) {
        rep.max_energy_gap =
            std::max(rep.max_energy_gap, std::abs(energy_from_lagrangian(L, pt, cfg) - energy(h, pt)));
        Vec a = hamilton_rhs(h, pt).flatten();
        Vec b = hamilton_rhs(hL, pt).flatten();
        rep.max_rhs_gap = std::max(rep.max_rhs_gap, norm_inf(a - b));
    }
    if (traj.size() >= 16) {
        Curve x = traj.x_curve();
        const double lo = traj.times.front(), hi = traj.times.back();
        const double margin = std::max(8.0 * el_spacing, 0.1 * (hi - lo));
        std::vector<double> ts;
        for (int i = 0; i <= 10; ++i) ts.push_back(lo + margin + (hi - lo - 2 * margin) * i / 10.0);
        for (const Vec& r : euler_lagrange_residual(L, x, ts, el_spacing))
            rep.max_el_residual = std::max(rep.max_el_residual, norm_inf(r));
    }
    return rep;
}

PhaseCurve lift_curve_via_section(const CotangentCurve& gamma, int k,
                                  std::function<std::vector<Vec>(const DualJetPoint&)> section) {
    const int m = gamma.x.dim();
    auto at = [gamma, k, section](double t) {
        std::vector<Vec> jets = gamma.x.jets(t, k - 1);
        JetPoint jet(k, jets[0], std::vector<Vec>(jets.begin() + 1, jets.end()));
        DualJetPoint d(jet, gamma.p(t));
        std::vector<Vec> p = section(d);
        if (static_cast<int>(p.size()) != k - 1)
            throw ArgumentError("lift_curve_via_section: section must supply k-1 momentum levels");
        p.push_back(d.pk);
        return PhasePoint(std::move(jet), std::move(p));
    };
    return PhaseCurve::from_closure(k, m, at);
}

double energy_drift(const AffineHamiltonianModel& h, const Trajectory& traj) {
    if (traj.states.empty()) return 0.0;
    const double e0 = energy(h, traj.states.front());
    double drift = 0.0;
    for (const PhasePoint& s : traj.states) drift = std::max(drift, std::abs(energy(h, s) - e0));
    return drift;
}

} // namespace ostro
