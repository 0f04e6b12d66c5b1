#pragma once

// Dense truncated power series (jets) over the complex numbers. A series of
// order N stores exactly N+1 coefficients c_0..c_N and represents
// sum_{n<=N} c_n z^n. Arithmetic follows jet semantics: binary operations
// truncate to the smaller input order, since higher coefficients of the
// result would not be determined by the inputs.

#include <complex>
#include <vector>

namespace dphi {

using cplx = std::complex<double>;

// Resource guard: compose/multiply reject requested output orders above this.
inline constexpr int kMaxSeriesOrder = 1 << 20;

class PowerSeries {
public:
    // coeffs must be non-empty; order() == coeffs.size() - 1.
    explicit PowerSeries(std::vector<cplx> coeffs);

    static PowerSeries zero(int order);
    static PowerSeries monomial(int degree, cplx c);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    // Coefficient of z^n; 0 outside the stored range.
    cplx coeff(int n) const;
    const std::vector<cplx>& coeffs() const { return coeffs_; }

private:
    std::vector<cplx> coeffs_;
};

// Termwise derivative; result order is max(order-1, 0).
PowerSeries derive(const PowerSeries& f);
// Antiderivative with value 0 at the origin; result order is order+1.
PowerSeries integrate_from_zero(const PowerSeries& f);
// Coefficientwise sum, truncated to the smaller order.
PowerSeries add(const PowerSeries& f, const PowerSeries& g);
PowerSeries scale(cplx a, const PowerSeries& f);
// Cauchy product truncated to the smaller input order (jet semantics).
PowerSeries multiply(const PowerSeries& f, const PowerSeries& g);
// Cauchy product truncated at an explicit output order. Using
// out_order = f.order() + g.order() gives the exact polynomial product.
PowerSeries multiply(const PowerSeries& f, const PowerSeries& g, int out_order);
// Single-threaded reference for the parallel product above; sums each output
// coefficient in the same order, so the results are bit-identical.
PowerSeries multiply_serial(const PowerSeries& f, const PowerSeries& g, int out_order);
// f(g(z)) truncated at out_order, by Horner recursion on f's coefficients.
// f is treated as the polynomial its stored coefficients define.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g, int out_order);
// Horner evaluation from the top coefficient down (deterministic).
cplx evaluate(const PowerSeries& f, cplx z);

} // namespace dphi
