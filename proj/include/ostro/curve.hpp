#pragma once

#include <functional>
#include <optional>

#include "ostro/jet.hpp"

namespace ostro {

/// A path t -> R^m with a derivative oracle. Analytic derivative closures can
/// be supplied per curve; otherwise central finite differences on eval are
/// used. Sampled paths get Fornberg stencils on their uniform grid.
class Curve {
public:
    Curve() = default;

    /// Callable curve; optional analytic derivative (t, order) -> vector.
    static Curve analytic(int dim, std::function<Vec(double)> eval,
                          std::function<Vec(double, int)> deriv = nullptr);

    /// Uniformly sampled curve on [t0, t0 + (n-1)*dt].
    static Curve sampled(int dim, double t0, double dt, std::vector<Vec> values);

    int dim() const { return dim_; }

    Vec operator()(double t) const;

    /// d-th derivative at t (d = 0 gives the value).
    Vec derivative(double t, int d) const;

    /// Jet of order d at t: component (1/a!) d^a/dt^a for a = 0..d.
    std::vector<Vec> jets(double t, int d) const;

    /// Reparametrized curve t -> eval(phi(t)); derivatives by composition of
    /// the two jet expansions.
    Curve compose(const Curve& phi) const;

private:
    int dim_ = 0;
    std::function<Vec(double)> eval_;
    std::function<Vec(double, int)> deriv_;
    // sampled representation
    bool is_sampled_ = false;
    double t0_ = 0.0, dt_ = 0.0;
    std::vector<Vec> samples_;
};

/// Jets of x(t) up to order k as an ExtendedJetPoint:
/// y^(a) = (1/a!) d^a x/dt^a, a = 1..k.
ExtendedJetPoint prolong_curve(const Curve& curve, int k, double t);

/// Same, stopping at level k-1 (a JetPoint of order k).
JetPoint prolong_curve_base(const Curve& curve, int k, double t);

/// Scalar reparametrization of [0,1] with derivative oracle.
class Reparametrization {
public:
    Reparametrization(std::function<double(double)> phi,
                      std::function<double(double, int)> deriv = nullptr)
        : phi_(std::move(phi)), deriv_(std::move(deriv)) {}

    double operator()(double t) const { return phi_(t); }
    double derivative(double t, int d) const;

    Curve as_curve() const;

private:
    std::function<double(double)> phi_;
    std::function<double(double, int)> deriv_;
};

} // namespace ostro
