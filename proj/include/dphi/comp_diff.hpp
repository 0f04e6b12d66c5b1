#pragma once

// The composition-differentiation operator T f = f' o phi on the weighted
// Dirichlet scale: action on truncated series, Galerkin matrix in the
// orthonormal monomial basis, operator norm by power iteration, the exact
// closed-form norm for dilations, Hilbert-Schmidt norms by three routes, and
// the unit-norm test-function family used for essential-norm evidence.

#include <string>
#include <vector>

#include "dphi/power_series.hpp"
#include "dphi/quadrature.hpp"
#include "dphi/self_map.hpp"
#include "dphi/space.hpp"

namespace dphi {

// T f truncated at out_order: compose(derive(f), phi) as jets.
PowerSeries apply(const SelfMap& m, const PowerSeries& f, int out_order);

// Galerkin truncation: entry (k, n) is the coefficient of basis element e_k
// in T e_n, for n = 0..col_order, k = 0..row_order. Row-major storage.
struct OperatorMatrix {
    int row_order = 0;
    int col_order = 0;
    double alpha = 0.0;
    std::string map_spec;
    std::vector<cplx> entries;

    cplx at(int k, int n) const {
        return entries[static_cast<std::size_t>(k) * (col_order + 1) +
                       static_cast<std::size_t>(n)];
    }
};

OperatorMatrix build_matrix(const SelfMap& m, const SpaceParams& p, int col_order,
                            int row_order);
// Single-threaded reference; bit-identical to build_matrix.
OperatorMatrix build_matrix_serial(const SelfMap& m, const SpaceParams& p, int col_order,
                                   int row_order);

// Largest singular value by power iteration on the Gram matrix, using the
// nonzero entries only, started from the normalized all-ones vector and
// stopped when the Rayleigh quotient's relative change drops below tol.
double operator_norm(const OperatorMatrix& mat, double tol = 1e-13,
                     long max_iter = 200000);

// Exact operator norm of T for phi(z) = r z: the norm is the largest of
// f(n) = n^{(3-alpha)/2} (n+1)^{(alpha-1)/2} |r|^{n-1} over integers n >= 1,
// attained at floor(x0) or floor(x0)+1 where x0 is the critical point of f.
struct ClosedFormDilationNorm {
    double x0 = 0.0;
    long eta = 0;
    double norm = 0.0;
    double f_at_floor = 0.0;
    double f_at_floor_plus_one = 0.0;
};

ClosedFormDilationNorm closed_form_dilation_norm(cplx r, const SpaceParams& p);

// Hilbert-Schmidt norm, route 1: sqrt(sum_{n=1}^{N} ||T e_n||^2) in the
// sequence norm, with the last summand reported as a truncation indicator.
struct HsBasisResult {
    double value = 0.0;
    double last_term = 0.0;
};

HsBasisResult hs_norm_basis(const SelfMap& m, const SpaceParams& p, int terms);

// Route 2: sqrt of the quadrature value of
//   integral |phi'|^2 (1 - |phi|^2)^{-(alpha+4)} dA_alpha.
// Reliable when sup|phi| < 1; with sup|phi| = 1 the integrand may peak
// between nodes and the value is a lower estimate.
double hs_norm_integral(const SelfMap& m, const SpaceParams& p, const DiskQuadrature& q);

// Route 3: the same integral summed exactly through the binomial expansion
//   sum_j binom(alpha+3+j, j) ||(phi^{j+1})'||^2_{A_alpha} / (j+1)^2,
// available for series-capable maps with sup|phi| < 1.
double hs_norm_series(const SelfMap& m, const SpaceParams& p);

// Orthogonal projection onto span{z^k : k > n}: zeroes coefficients 0..n.
PowerSeries tail_projection(const PowerSeries& f, int n);

// The unit-scale test family: f_w(z) = (1-|w|^2)^{(2+alpha)/2} times the
// antiderivative of (1 - conj(w) xi)^{-(alpha+2)}, truncated at the given
// series order.
PowerSeries test_function(cplx w, const SpaceParams& p, int order);

// ||T f_w|| for the catalog map m. Uses the exact coefficient series of
// f_w' o phi for dilation and polynomial maps when |w| sup|phi| <= 3/4;
// otherwise falls back to the quadrature seminorm
// sqrt(|g(0)|^2 + ||g'||^2_{A_alpha}), which is equivalent to the sequence
// norm up to fixed two-sided constants.
double test_function_image_norm(const SelfMap& m, const SpaceParams& p, cplx w);

} // namespace dphi
