#include "ostro/fd.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "ostro/errors.hpp"

namespace ostro::fd {

namespace {

double env_step() {
    static const double v = [] {
        if (const char* s = std::getenv("OSTRO_FD_STEP")) {
            char* end = nullptr;
            double x = std::strtod(s, &end);
            if (end != s && x > 0.0) return x;
        }
        return 0.0;
    }();
    return v;
}

} // namespace

double base_step(int order) {
    if (double o = env_step(); o > 0.0) return o;
    const double eps = std::numeric_limits<double>::epsilon();
    return std::pow(eps, 1.0 / (order + 2));
}

double step(int order, double coordinate) {
    return std::max(1.0, std::abs(coordinate)) * base_step(order);
}

Vec partial(const std::function<Vec(const Vec&)>& f, Vec x, int j, int total_order) {
    const double h = step(total_order, x[j]);
    const double xj = x[j];
    x[j] = xj + h;
    Vec fp = f(x);
    x[j] = xj - h;
    Vec fm = f(x);
    x[j] = xj;
    Vec out(fp.size());
    for (size_t i = 0; i < fp.size(); ++i) out[i] = (fp[i] - fm[i]) / (2.0 * h);
    return out;
}

Vec partial_multi(const std::function<Vec(const Vec&)>& f, const Vec& x, std::span<const int> idx) {
    if (idx.empty()) return f(x);
    const int total = static_cast<int>(idx.size());
    // differentiate in idx[0], recursing on the tail
    std::vector<int> tail(idx.begin() + 1, idx.end());
    auto g = [&](const Vec& p) { return partial_multi(f, p, tail); };
    return partial(g, x, idx[0], total);
}

Vec gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
    auto fv = [&](const Vec& p) { return Vec{f(p)}; };
    Vec g(x.size());
    for (size_t j = 0; j < x.size(); ++j) g[j] = partial(fv, x, static_cast<int>(j), 1)[0];
    return g;
}

Mat hessian(const std::function<double(const Vec&)>& f, const Vec& x) {
    const int n = static_cast<int>(x.size());
    Mat H(n, n);
    Vec p = x;
    for (int i = 0; i < n; ++i) {
        const double hi = step(2, x[i]);
        for (int j = i; j < n; ++j) {
            const double hj = step(2, x[j]);
            if (i == j) {
                double f0 = f(x);
                p[i] = x[i] + hi;
                double fp = f(p);
                p[i] = x[i] - hi;
                double fm = f(p);
                p[i] = x[i];
                H(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
            } else {
                p[i] = x[i] + hi; p[j] = x[j] + hj; double fpp = f(p);
                p[j] = x[j] - hj; double fpm = f(p);
                p[i] = x[i] - hi; double fmm = f(p);
                p[j] = x[j] + hj; double fmp = f(p);
                p[i] = x[i]; p[j] = x[j];
                H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            }
        }
    }
    return H;
}

Vec fornberg_weights(double z, std::span<const double> grid, int d) {
    // Fornberg 1988, one-point version: weights for the d-th derivative at z.
    const int n = static_cast<int>(grid.size());
    if (n < d + 1) throw StencilError("fornberg_weights: stencil smaller than derivative order + 1");
    // c[k][j]: weight of node j for derivative order k
    std::vector<Vec> c(d + 1, Vec(n, 0.0));
    double c1 = 1.0;
    double c4 = grid[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, d);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = grid[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = grid[i] - grid[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[d];
}

Vec curve_derivative(const std::function<Vec(double)>& c, double t, int d, double h) {
    if (d < 0) throw ArgumentError("curve_derivative: negative order");
    if (d == 0) return c(t);
    if (h <= 0.0) h = step(d, t) * 0.5;
    const int half = (d + 1) / 2 + 1; // one extra node pair for accuracy
    const int n = 2 * half + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = t + (i - half) * h;
    Vec w = fornberg_weights(t, grid, d);
    Vec out;
    for (int i = 0; i < n; ++i) {
        Vec v = c(grid[i]);
        if (out.empty()) out.assign(v.size(), 0.0);
        for (size_t j = 0; j < v.size(); ++j) out[j] += w[i] * v[j];
    }
    return out;
}

double sampled_derivative(std::span<const double> values, double dt, int i, int d, int width) {
    if (width <= 0) width = 2 * d + 1;
    if (width < d + 1) throw StencilError("sampled_derivative: stencil too small");
    const int n = static_cast<int>(values.size());
    const int half = width / 2;
    if (i - half < 0 || i + half >= n)
        throw StencilError("sampled_derivative: stencil exceeds sample range");
    std::vector<double> grid(width);
    for (int j = 0; j < width; ++j) grid[j] = (j - half) * dt;
    Vec w = fornberg_weights(0.0, grid, d);
    double s = 0.0;
    for (int j = 0; j < width; ++j) s += w[j] * values[i - half + j];
    return s;
}

} // namespace ostro::fd
