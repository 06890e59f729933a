#include "ostro/curve.hpp"

#include <cmath>

#include "ostro/fd.hpp"

namespace ostro {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

Curve Curve::analytic(int dim, std::function<Vec(double)> eval,
                      std::function<Vec(double, int)> deriv) {
    Curve c;
    c.dim_ = dim;
    c.eval_ = std::move(eval);
    c.deriv_ = std::move(deriv);
    return c;
}

Curve Curve::sampled(int dim, double t0, double dt, std::vector<Vec> values) {
    if (dt <= 0.0) throw ArgumentError("Curve::sampled: dt must be positive");
    if (values.size() < 2) throw StencilError("Curve::sampled: need at least two samples");
    Curve c;
    c.dim_ = dim;
    c.is_sampled_ = true;
    c.t0_ = t0;
    c.dt_ = dt;
    c.samples_ = std::move(values);
    return c;
}

Vec Curve::operator()(double t) const { return derivative(t, 0); }

Vec Curve::derivative(double t, int d) const {
    if (d < 0) throw ArgumentError("Curve::derivative: negative order");
    if (is_sampled_) {
        const int n = static_cast<int>(samples_.size());
        const int width = std::max(2 * d + 1, 5);
        if (width > n) throw StencilError("Curve::derivative: not enough samples for stencil");
        int center = static_cast<int>(std::lround((t - t0_) / dt_));
        int lo = std::max(0, std::min(center - width / 2, n - width));
        std::vector<double> grid(width);
        for (int i = 0; i < width; ++i) grid[i] = t0_ + (lo + i) * dt_;
        Vec w = fd::fornberg_weights(t, grid, d);
        Vec out(dim_, 0.0);
        for (int i = 0; i < width; ++i)
            for (int j = 0; j < dim_; ++j) out[j] += w[i] * samples_[lo + i][j];
        return out;
    }
    if (d == 0) return eval_(t);
    if (deriv_) return deriv_(t, d);
    return fd::curve_derivative(eval_, t, d);
}

std::vector<Vec> Curve::jets(double t, int d) const {
    std::vector<Vec> out;
    out.reserve(d + 1);
    for (int a = 0; a <= d; ++a) out.push_back((1.0 / factorial(a)) * derivative(t, a));
    return out;
}

Curve Curve::compose(const Curve& phi) const {
    if (phi.dim() != 1) throw ArgumentError("Curve::compose: inner curve must be scalar");
    Curve outer = *this;
    Curve inner = phi;
    auto eval = [outer, inner](double t) { return outer(inner(t)[0]); };
    auto deriv = [outer, inner](double t, int d) -> Vec {
        const double u = inner(t)[0];
        if (d == 0) return outer(u);
        // truncated power-series composition of the two jet expansions
        std::vector<Vec> xj = outer.jets(u, d);       // xj[s] = x^(s)(u)/s!
        std::vector<Vec> pj = inner.jets(t, d);       // pj[b][0] = phi^(b)(t)/b!
        std::vector<double> U(d + 1, 0.0);
        for (int b = 1; b <= d; ++b) U[b] = pj[b][0];
        // P = U^s truncated at degree d
        std::vector<double> P(U);
        Vec coeff(outer.dim(), 0.0);
        for (int s = 1; s <= d; ++s) {
            if (s > 1) {
                std::vector<double> Q(d + 1, 0.0);
                for (int a = s - 1; a <= d; ++a)
                    for (int b = 1; a + b <= d; ++b) Q[a + b] += P[a] * U[b];
                P = Q;
            }
            for (int j = 0; j < outer.dim(); ++j) coeff[j] += xj[s][j] * P[d];
        }
        return factorial(d) * coeff;
    };
    return Curve::analytic(dim_, std::move(eval), std::move(deriv));
}

ExtendedJetPoint prolong_curve(const Curve& curve, int k, double t) {
    if (k < 1) throw ArgumentError("prolong_curve: order must be >= 1");
    std::vector<Vec> j = curve.jets(t, k);
    JetPoint base(k, j[0], std::vector<Vec>(j.begin() + 1, j.begin() + k));
    return ExtendedJetPoint(std::move(base), j[k]);
}

JetPoint prolong_curve_base(const Curve& curve, int k, double t) {
    if (k < 1) throw ArgumentError("prolong_curve_base: order must be >= 1");
    std::vector<Vec> j = curve.jets(t, k - 1);
    return JetPoint(k, j[0], std::vector<Vec>(j.begin() + 1, j.end()));
}

double Reparametrization::derivative(double t, int d) const {
    if (d == 0) return phi_(t);
    if (deriv_) return deriv_(t, d);
    auto f = [this](double s) { return Vec{phi_(s)}; };
    return fd::curve_derivative(f, t, d)[0];
}

Curve Reparametrization::as_curve() const {
    auto self = *this;
    return Curve::analytic(
        1, [self](double t) { return Vec{self(t)}; },
        [self](double t, int d) { return Vec{self.derivative(t, d)}; });
}

} // namespace ostro
