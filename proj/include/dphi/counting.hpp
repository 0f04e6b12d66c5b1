#pragma once

// Generalized counting function N(w) = sum over preimages z of w of
// (1 - |z|^2)^alpha, evaluated by the route appropriate to each map kind:
//   - univalent maps: closed-form inverse, one term;
//   - polynomials: all roots of phi(z) - w with multiplicity (companion
//     matrix by default, Aberth iteration as an alternative);
//   - the singular exponential map: the explicit preimage series
//     sum_{k>=0} (-4 log|w| / ((log|w| - 1)^2 + 4 pi^2 k^2))^alpha,
//     which converges only for alpha > 1/2.
// Also hosts the change-of-variable residual used to cross-validate the
// counting routes against direct quadrature.

#include <vector>

#include "dphi/power_series.hpp"
#include "dphi/quadrature.hpp"
#include "dphi/self_map.hpp"
#include "dphi/space.hpp"

namespace dphi {

enum class CountingRoute { univalent_closed_form, polynomial_roots, exp_series };

const char* to_string(CountingRoute route);

struct CountingSample {
    cplx w{};
    double value = 0.0;
    CountingRoute route = CountingRoute::univalent_closed_form;
    // Set when a polynomial root lands within 1e-10 of the unit circle; such
    // roots are excluded from the sum but make the sample boundary-ambiguous.
    bool boundary_flagged = false;
};

enum class RootMethod { companion, aberth };

// All complex roots of sum_k coeffs[k] z^k, with multiplicity. Requires a
// nonzero leading coefficient and degree >= 1.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs, RootMethod method);

// Closed-form route for the univalent catalog maps (dilation, automorphism,
// lens). Rejects w exactly equal to phi(0), where the counting function is
// left undefined by convention.
CountingSample counting_univalent(const SelfMap& m, const SpaceParams& p, cplx w);

// Root-finding route for polynomial maps of degree >= 1.
CountingSample counting_polynomial(const SelfMap& m, const SpaceParams& p, cplx w,
                                   RootMethod method = RootMethod::companion);

// Series route for the singular exponential map. Requires alpha > 1/2 and
// w != 0; the value depends on |w| only.
CountingSample counting_exp(const SpaceParams& p, cplx w);

// Dispatch on the map kind.
CountingSample counting_value(const SelfMap& m, const SpaceParams& p, cplx w,
                              RootMethod method = RootMethod::companion);

// Relative residual |LHS - RHS| / RHS of the change-of-variable identity
//   integral f(phi(z)) |phi'(z)|^2 (1-|z|^2)^alpha dA(z)
//     = integral f(w) N(w) dA(w)
// with f(w) = (1 - |w|^2)^test_exponent, both sides by the supplied
// quadrature. The right side is integrated over the closed-form support disk
// |w| <= sup_norm_bound when that bound is < 1; this keeps the quadrature
// away from the kink of N at the support boundary. Supported for dilation
// and polynomial maps.
double cov_residual(const SelfMap& m, const SpaceParams& p, int test_exponent,
                    const DiskQuadrature& q);

} // namespace dphi
