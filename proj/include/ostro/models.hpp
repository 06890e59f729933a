#pragma once

#include <functional>
#include <string>

#include "ostro/jet.hpp"

namespace ostro {

/// Damped-Newton settings shared by the Legendre inversions.
struct NewtonConfig {
    int max_iterations = 50;
    double tolerance = 1e-12; ///< absolute, on the max-norm of the residual
    int max_halvings = 30;
    bool grid_fallback = true; ///< reseed from a coarse grid when the zero start diverges

    void validate() const {
        if (max_iterations < 1) throw ArgumentError("NewtonConfig: iterations must be >= 1");
        if (tolerance <= 0.0) throw ArgumentError("NewtonConfig: tolerance must be positive");
    }
};

/// An order-k Lagrangian on T^k M in one chart. Derivatives default to
/// central finite differences of eval; analytic closures override per slot.
struct LagrangianModel {
    int order = 1;
    int dim = 0;
    std::function<double(const ExtendedJetPoint&)> eval;
    /// Optional: gradient with respect to level a (0 = x, ..., k = y^(k)).
    std::function<Vec(const ExtendedJetPoint&, int)> grad;
    /// Optional: vertical hessian d2L/dy^(k)i dy^(k)j.
    std::function<Mat(const ExtendedJetPoint&)> vhess;
    /// Points where L is undefined (default: none).
    std::function<bool(const ExtendedJetPoint&)> excluded;
    bool hyperregular = true;

    double operator()(const ExtendedJetPoint& pt) const;
    Vec gradient_level(const ExtendedJetPoint& pt, int level) const;
    Mat vertical_hessian(const ExtendedJetPoint& pt) const;
    void check_domain(const ExtendedJetPoint& pt) const;

    static LagrangianModel from_eval(int k, int m, std::function<double(const ExtendedJetPoint&)> f);
};

/// A local-H0 family of an affine Hamiltonian of order k in one chart.
struct AffineHamiltonianModel {
    int order = 1;
    int dim = 0;
    std::function<double(const DualJetPoint&)> h0;
    /// Optional: gradient with respect to jet level a (0 = x, ..., k-1).
    std::function<Vec(const DualJetPoint&, int)> grad;
    /// Optional: gradient with respect to the momentum.
    std::function<Vec(const DualJetPoint&)> grad_p;
    /// Optional: vertical hessian h^{ij} = d2H0/dp_i dp_j.
    std::function<Mat(const DualJetPoint&)> vhess;
    std::function<bool(const DualJetPoint&)> excluded;
    bool hyperregular = true;

    double operator()(const DualJetPoint& pt) const;
    Vec gradient_level(const DualJetPoint& pt, int level) const;
    Vec gradient_p(const DualJetPoint& pt) const;
    Mat vertical_hessian(const DualJetPoint& pt) const;
    void check_domain(const DualJetPoint& pt) const;

    static AffineHamiltonianModel from_h0(int k, int m, std::function<double(const DualJetPoint&)> f);
};

/// A vectorial Hamiltonian has the same local data as an affine one but
/// transforms as a scalar under chart changes.
using VectorialHamiltonianModel = AffineHamiltonianModel;

/// An affine section of T^k M -> T^(k-1)M in coordinates: s^i(x, y^(1..k-1)).
struct AffineSection {
    int order = 1;
    int dim = 0;
    std::function<Vec(const JetPoint&)> s;
    /// Optional: ds^i/d(level a)^j as a matrix (rows i, cols j).
    std::function<Mat(const JetPoint&, int)> grad;

    Vec operator()(const JetPoint& pt) const { return s(pt); }
    Mat gradient_level(const JetPoint& pt, int level) const;

    static AffineSection zero(int k, int m);
};

/// Vertical-hessian summary of one sample point.
struct RegularityRow {
    double det = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool nondegenerate = false;
    bool positive_definite = false;
};

/// Reports, never throws on degeneracy. Both signed spectra are recoverable
/// from (min, max) eigenvalues since negating the matrix mirrors them.
struct RegularityReport {
    std::vector<RegularityRow> rows;
    double min_abs_det = 0.0;
    double min_eigenvalue = 0.0;
    bool all_nondegenerate = false;
    bool all_positive_definite = false;
};

RegularityReport regularity_report(const LagrangianModel& L, const std::vector<ExtendedJetPoint>& pts,
                                   double degeneracy_tol = 1e-10);
RegularityReport regularity_report(const AffineHamiltonianModel& h, const std::vector<DualJetPoint>& pts,
                                   double degeneracy_tol = 1e-10);

// Built-in model families used by tests and the dualize front end.

/// L = 1/2 sum (y^(k)i)^2, analytic oracle.
LagrangianModel quadratic_kinetic_lagrangian(int k, int m);

/// L = sum cosh(y^(k)i), analytic oracle; conjugate has the closed form
/// sum p asinh(p) - sqrt(1+p^2).
LagrangianModel cosh_lagrangian(int k, int m);

/// Strictly convex quartic in the top slot with lower-level coupling:
/// L = 1/2 v^T A v + sum c_i v_i^4 + v . (b + sum_a D_a u_a) + 1/2 sum_a |u_a|^2,
/// with A SPD and c_i > 0 drawn from the seed.
LagrangianModel convex_quartic_lagrangian(int k, int m, unsigned seed);

/// Indefinite vertical hessian diag(1, -1, 1, ...), for regularity reporting.
LagrangianModel indefinite_lagrangian(int k, int m);

} // namespace ostro
