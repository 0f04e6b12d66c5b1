#include "dphi/space.hpp"

#include <cmath>
#include <string>

#include "dphi/errors.hpp"

namespace dphi {

SpaceParams::SpaceParams(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0))
        throw invalid_spec("alpha must lie in the open interval (0, 1), got " +
                           std::to_string(a));
}

double monomial_norm_sq(const SpaceParams& p, int n) {
    return std::pow(static_cast<double>(n + 1), 1.0 - p.alpha);
}

double dirichlet_norm(const PowerSeries& f, const SpaceParams& p) {
    double s = 0.0;
    for (int n = 0; n <= f.order(); ++n) s += monomial_norm_sq(p, n) * std::norm(f.coeff(n));
    return std::sqrt(s);
}

cplx inner(const PowerSeries& f, const PowerSeries& g, const SpaceParams& p) {
    const int ord = std::min(f.order(), g.order());
    cplx s{};
    for (int n = 0; n <= ord; ++n) s += monomial_norm_sq(p, n) * f.coeff(n) * std::conj(g.coeff(n));
    return s;
}

PowerSeries kernel(cplx w, const SpaceParams& p, int order) {
    std::vector<cplx> v(static_cast<std::size_t>(order) + 1);
    cplx wbar_pow = 1.0; // conj(w)^n
    for (int n = 0; n <= order; ++n) {
        v[static_cast<std::size_t>(n)] = wbar_pow / monomial_norm_sq(p, n);
        wbar_pow *= std::conj(w);
    }
    return PowerSeries(std::move(v));
}

PowerSeries dkernel(cplx w, const SpaceParams& p, int order) {
    std::vector<cplx> v(static_cast<std::size_t>(order) + 1);
    cplx wbar_pow = 1.0; // conj(w)^{n-1}
    for (int n = 1; n <= order; ++n) {
        v[static_cast<std::size_t>(n)] = static_cast<double>(n) * wbar_pow / monomial_norm_sq(p, n);
        wbar_pow *= std::conj(w);
    }
    return PowerSeries(std::move(v));
}

double dkernel_norm(cplx w, const SpaceParams& p) {
    const double x = std::norm(w); // |w|^2
    if (!(x < 1.0)) throw invalid_spec("dkernel_norm requires |w| < 1");
    double s = 0.0, xpow = 1.0; // |w|^{2(n-1)}
    for (int n = 1;; ++n) {
        const double term = static_cast<double>(n) * n * xpow / monomial_norm_sq(p, n);
        s += term;
        xpow *= x;
        if (n > 8 && term < 1e-18 * s) break;
        if (n > 100000000)
            throw numeric_failure("dkernel_norm series did not converge for |w|^2 = " +
                                  std::to_string(x));
    }
    return std::sqrt(s);
}

PowerSeries basis_e(int n, const SpaceParams& p) {
    if (n < 0) throw invalid_spec("basis index must be >= 0");
    return PowerSeries::monomial(n, std::pow(static_cast<double>(n + 1), (p.alpha - 1.0) / 2.0));
}

double equivalent_norm(const PowerSeries& f, const SpaceParams& p, const DiskQuadrature& q) {
    const PowerSeries fp = derive(f);
    const double seminorm_sq = integrate_disk(
        [&fp](cplx z) { return std::norm(evaluate(fp, z)); }, Measure::weighted(p.alpha), q);
    return std::sqrt(std::norm(f.coeff(0)) + seminorm_sq);
}

} // namespace dphi
