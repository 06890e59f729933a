#pragma once

#include <functional>
#include <span>

#include "ostro/linalg.hpp"

namespace ostro {

/// Central finite differences used by every default derivative oracle.
/// The relative step for a derivative of total order s is eps^(1/(s+2))
/// (1/3 for first, 1/4 for second, ...), overridable via OSTRO_FD_STEP.
namespace fd {

/// Base relative step for a derivative of total order s (>= 1).
double base_step(int order);

/// Absolute step at coordinate value c: max(1,|c|) * base_step(order).
double step(int order, double coordinate);

/// d/dx_j of f at x (one central difference), for Vec-valued f.
/// `total_order` is the order of the derivative being assembled overall,
/// which controls the step size.
Vec partial(const std::function<Vec(const Vec&)>& f, Vec x, int j, int total_order = 1);

/// Mixed partial d^s f / dx_{idx[0]} ... dx_{idx[s-1]} by nested central
/// differences. idx may repeat entries.
Vec partial_multi(const std::function<Vec(const Vec&)>& f, const Vec& x, std::span<const int> idx);

/// Gradient of a scalar function.
Vec gradient(const std::function<double(const Vec&)>& f, const Vec& x);

/// Symmetric Hessian of a scalar function.
Mat hessian(const std::function<double(const Vec&)>& f, const Vec& x);

/// Derivative of order d of a 1-D curve t -> Vec at t, by a symmetric
/// stencil of 2*ceil(d/2)+1+2*extra nodes with Fornberg weights.
Vec curve_derivative(const std::function<Vec(double)>& c, double t, int d, double h = 0.0);

/// Fornberg weights: coefficients w such that sum_i w[i] f(grid[i])
/// approximates the d-th derivative at z.
Vec fornberg_weights(double z, std::span<const double> grid, int d);

/// d-th derivative of uniformly sampled values at index i, using a centered
/// stencil of `width` nodes (default 2d+1). Throws StencilError when the
/// stencil does not fit inside the sample range.
double sampled_derivative(std::span<const double> values, double dt, int i, int d, int width = 0);

} // namespace fd
} // namespace ostro
