#pragma once

// Weighted Dirichlet spaces D_alpha on the unit disk, 0 < alpha < 1, with
// ||f||^2 = sum_n (n+1)^{1-alpha} |a_n|^2 in terms of Taylor coefficients.
// Provides the inner product, reproducing kernels for point evaluation and
// for derivative evaluation, the normalized monomial basis, and a quadrature
// norm equivalent to the coefficient norm.

#include <complex>

#include "dphi/power_series.hpp"
#include "dphi/quadrature.hpp"

namespace dphi {

struct SpaceParams {
    double alpha;

    // Throws invalid_spec unless 0 < alpha < 1.
    explicit SpaceParams(double a);
};

// Squared monomial norm ||z^n||^2 = (n+1)^{1-alpha}.
double monomial_norm_sq(const SpaceParams& p, int n);

// Coefficient norm sqrt(sum (n+1)^{1-alpha} |a_n|^2) over stored coefficients.
double dirichlet_norm(const PowerSeries& f, const SpaceParams& p);

// <f, g> = sum (n+1)^{1-alpha} a_n conj(b_n), summed to the smaller order.
cplx inner(const PowerSeries& f, const PowerSeries& g, const SpaceParams& p);

// Reproducing kernel k_w: <f, kernel(w)> = f(w) for polynomials f of degree
// <= order.
PowerSeries kernel(cplx w, const SpaceParams& p, int order);

// Derivative-evaluation kernel: <f, dkernel(w)> = f'(w).
PowerSeries dkernel(cplx w, const SpaceParams& p, int order);

// Exact norm of the derivative-evaluation kernel,
// sqrt(sum_{n>=1} n^2 |w|^{2(n-1)} / (n+1)^{1-alpha}), summed to convergence.
// Requires |w| < 1.
double dkernel_norm(cplx w, const SpaceParams& p);

// Orthonormal basis element e_n = (n+1)^{(alpha-1)/2} z^n.
PowerSeries basis_e(int n, const SpaceParams& p);

// Quadrature norm sqrt(|f(0)|^2 + integral |f'|^2 dA_alpha), equivalent to
// dirichlet_norm with constants bounded independently of f.
double equivalent_norm(const PowerSeries& f, const SpaceParams& p, const DiskQuadrature& q);

} // namespace dphi
