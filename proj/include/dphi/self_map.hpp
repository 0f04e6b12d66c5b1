#pragma once

// Catalog of holomorphic self-maps of the unit disk used as composition
// symbols. Each map provides pointwise evaluation, pointwise derivative,
// optionally a Taylor expansion at 0, and structural metadata consumed by the
// counting and diagnostic routines.
//
// Spec-string grammar (used by the CLI and by parse/format):
//   dilation:R        phi(z) = R z, complex R with 0 < |R| < 1
//   auto:B            phi(z) = (B - z)/(1 - conj(B) z), |B| < 1
//   lens:D            phi = (s^D - 1)/(s^D + 1), s = (1+z)/(1-z), 0 < D < 1
//   exp               phi(z) = exp((z+1)/(z-1))
//   poly:c0,c1,...    phi(z) = sum c_k z^k (validated as a self-map)
// Complex literals are "a", "bi" or "a+bi"/"a-bi" with shortest round-trip
// formatting, so format -> parse is lossless.

#include <complex>
#include <string>
#include <vector>

#include "dphi/power_series.hpp"

namespace dphi {

cplx parse_complex(const std::string& s);
std::string format_complex(cplx v);

class SelfMap {
public:
    enum class Kind { dilation, automorphism, lens, singular_exp, polynomial };

    static SelfMap dilation(cplx r);
    // General form eta*(beta - z)/(1 - conj(beta) z) with |eta| = 1. The
    // spec-string grammar covers eta = 1 only.
    static SelfMap automorphism(cplx eta, cplx beta);
    static SelfMap lens(double delta);
    static SelfMap singular_exp();
    // Coefficients c_0..c_d ascending. Rejected unless a deterministic
    // 500-point sample of |z| <= 0.999 stays strictly inside the disk.
    static SelfMap polynomial(std::vector<cplx> coeffs);

    static SelfMap parse(const std::string& spec);
    std::string spec_string() const;

    Kind kind() const { return kind_; }
    cplx eval(cplx z) const;
    cplx derivative(cplx z) const;
    // Taylor expansion at 0 through the given order. Throws invalid_spec for
    // the singular exponential map, which has no expansion usable here
    // (its boundary singularity defeats polynomial truncation); see
    // has_series().
    PowerSeries as_series(int order) const;
    bool has_series() const { return kind_ != Kind::singular_exp; }

    bool univalent() const;
    bool fixes_origin() const;
    // Upper bound for sup |phi| over the disk: |R| for dilations,
    // min(1, sum |c_k|) for polynomials, 1 otherwise.
    double sup_norm_bound() const;

    // Parameter accessors (valid for the corresponding kind only).
    cplx dilation_factor() const { return a_; }
    cplx eta() const { return a_; }
    cplx beta() const { return b_; }
    double lens_delta() const { return delta_; }
    const std::vector<cplx>& poly_coeffs() const { return coeffs_; }

private:
    SelfMap(Kind k) : kind_(k) {}

    Kind kind_;
    cplx a_{}, b_{};
    double delta_ = 0.0;
    std::vector<cplx> coeffs_;
};

} // namespace dphi
