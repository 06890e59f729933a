#pragma once

#include <vector>

#include "ostro/errors.hpp"
#include "ostro/linalg.hpp"

namespace ostro {

/// A point of T^(k-1)M in a chart: base coordinates x plus jet levels
/// y^(1)..y^(k-1). Level alpha stores (1/alpha!) d^alpha x/dt^alpha along a
/// curve. k = 1 means no jet levels.
struct JetPoint {
    int order = 1; ///< k
    int dim = 0;   ///< m
    Vec x;
    std::vector<Vec> y; ///< y[a-1] = y^(a), a = 1..k-1

    JetPoint() = default;
    JetPoint(int k, Vec x0, std::vector<Vec> levels = {})
        : order(k), dim(static_cast<int>(x0.size())), x(std::move(x0)), y(std::move(levels)) {
        validate();
    }

    void validate() const {
        if (order < 1) throw ArgumentError("JetPoint: order must be >= 1");
        if (dim < 1 || static_cast<int>(x.size()) != dim)
            throw ArgumentError("JetPoint: bad base dimension");
        if (static_cast<int>(y.size()) != order - 1)
            throw ArgumentError("JetPoint: expected k-1 jet levels");
        for (const Vec& v : y)
            if (static_cast<int>(v.size()) != dim)
                throw ArgumentError("JetPoint: jet level has wrong dimension");
    }

    /// Level access with level 0 = x, level a = y^(a).
    const Vec& level(int a) const { return a == 0 ? x : y[a - 1]; }
    Vec& level(int a) { return a == 0 ? x : y[a - 1]; }
};

/// A JetPoint together with the top level y^(k); a point of T^k M.
struct ExtendedJetPoint {
    JetPoint jet;
    Vec top; ///< y^(k)

    ExtendedJetPoint() = default;
    ExtendedJetPoint(JetPoint j, Vec t) : jet(std::move(j)), top(std::move(t)) {
        if (static_cast<int>(top.size()) != jet.dim)
            throw ArgumentError("ExtendedJetPoint: top level has wrong dimension");
    }

    const Vec& level(int a) const { return a == jet.order ? top : jet.level(a); }
};

/// A JetPoint with the single momentum p of T^(k*)M.
struct DualJetPoint {
    JetPoint jet;
    Vec pk;

    DualJetPoint() = default;
    DualJetPoint(JetPoint j, Vec p) : jet(std::move(j)), pk(std::move(p)) {
        if (static_cast<int>(pk.size()) != jet.dim)
            throw ArgumentError("DualJetPoint: momentum has wrong dimension");
    }
};

/// A point of T*T^(k-1)M: JetPoint plus momentum levels p_(0)..p_(k-1).
struct PhasePoint {
    JetPoint jet;
    std::vector<Vec> p; ///< p[a] = p_(a), a = 0..k-1

    PhasePoint() = default;
    PhasePoint(JetPoint j, std::vector<Vec> mom) : jet(std::move(j)), p(std::move(mom)) {
        if (static_cast<int>(p.size()) != jet.order)
            throw ArgumentError("PhasePoint: expected k momentum levels");
        for (const Vec& v : p)
            if (static_cast<int>(v.size()) != jet.dim)
                throw ArgumentError("PhasePoint: momentum level has wrong dimension");
    }

    /// Flat state (x, y^(1..k-1), p_(0..k-1)) of length 2*k*m.
    Vec flatten() const;
    static PhasePoint unflatten(int order, int dim, const Vec& state);
};

inline Vec PhasePoint::flatten() const {
    Vec s;
    s.reserve(static_cast<size_t>(2 * jet.order * jet.dim));
    for (int a = 0; a < jet.order; ++a) {
        const Vec& v = jet.level(a);
        s.insert(s.end(), v.begin(), v.end());
    }
    for (const Vec& v : p) s.insert(s.end(), v.begin(), v.end());
    return s;
}

inline PhasePoint PhasePoint::unflatten(int order, int dim, const Vec& state) {
    if (static_cast<int>(state.size()) != 2 * order * dim)
        throw ArgumentError("PhasePoint::unflatten: wrong state length");
    auto seg = [&](int idx) {
        return Vec(state.begin() + static_cast<long>(idx) * dim,
                   state.begin() + static_cast<long>(idx + 1) * dim);
    };
    JetPoint j;
    j.order = order;
    j.dim = dim;
    j.x = seg(0);
    for (int a = 1; a < order; ++a) j.y.push_back(seg(a));
    std::vector<Vec> mom;
    for (int a = 0; a < order; ++a) mom.push_back(seg(order + a));
    return PhasePoint(std::move(j), std::move(mom));
}

/// Drop p_(0..k-2), keep p_(k-1): the canonical projection onto T^(k*)M.
inline DualJetPoint project_pi_prime(const PhasePoint& pt) {
    return DualJetPoint(pt.jet, pt.p.back());
}

} // namespace ostro
