#include "dphi/power_series.hpp"

#include <algorithm>
#include <string>

#include "dphi/errors.hpp"
#include "dphi/parallel.hpp"

namespace dphi {

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw invalid_spec("PowerSeries requires at least one coefficient");
}

PowerSeries PowerSeries::zero(int order) {
    if (order < 0) throw invalid_spec("series order must be >= 0");
    return PowerSeries(std::vector<cplx>(static_cast<std::size_t>(order) + 1));
}

PowerSeries PowerSeries::monomial(int degree, cplx c) {
    if (degree < 0) throw invalid_spec("monomial degree must be >= 0");
    std::vector<cplx> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return PowerSeries(std::move(v));
}

cplx PowerSeries::coeff(int n) const {
    if (n < 0 || n > order()) return {};
    return coeffs_[static_cast<std::size_t>(n)];
}

PowerSeries derive(const PowerSeries& f) {
    if (f.order() == 0) return PowerSeries::zero(0);
    std::vector<cplx> v(static_cast<std::size_t>(f.order()));
    for (int n = 1; n <= f.order(); ++n)
        v[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * f.coeff(n);
    return PowerSeries(std::move(v));
}

PowerSeries integrate_from_zero(const PowerSeries& f) {
    std::vector<cplx> v(static_cast<std::size_t>(f.order()) + 2);
    for (int n = 0; n <= f.order(); ++n)
        v[static_cast<std::size_t>(n + 1)] = f.coeff(n) / static_cast<double>(n + 1);
    return PowerSeries(std::move(v));
}

PowerSeries add(const PowerSeries& f, const PowerSeries& g) {
    const int ord = std::min(f.order(), g.order());
    std::vector<cplx> v(static_cast<std::size_t>(ord) + 1);
    for (int n = 0; n <= ord; ++n) v[static_cast<std::size_t>(n)] = f.coeff(n) + g.coeff(n);
    return PowerSeries(std::move(v));
}

PowerSeries scale(cplx a, const PowerSeries& f) {
    std::vector<cplx> v = f.coeffs();
    for (auto& c : v) c *= a;
    return PowerSeries(std::move(v));
}

PowerSeries multiply(const PowerSeries& f, const PowerSeries& g) {
    return multiply(f, g, std::min(f.order(), g.order()));
}

static void check_out_order(int out_order) {
    if (out_order < 0 || out_order > kMaxSeriesOrder)
        throw invalid_spec("requested series order " + std::to_string(out_order) +
                           " outside [0, " + std::to_string(kMaxSeriesOrder) + "]");
}

static cplx convolve_at(const PowerSeries& f, const PowerSeries& g, int n) {
    cplx acc{};
    const int lo = std::max(0, n - g.order());
    const int hi = std::min(n, f.order());
    for (int i = lo; i <= hi; ++i) acc += f.coeff(i) * g.coeff(n - i);
    return acc;
}

PowerSeries multiply(const PowerSeries& f, const PowerSeries& g, int out_order) {
    check_out_order(out_order);
    std::vector<cplx> v(static_cast<std::size_t>(out_order) + 1);
    // Each output coefficient is an independent dot product, so the fill can
    // run in parallel with a bit-identical result for any thread count.
    parallel_for(v.size(), [&](std::size_t k) { v[k] = convolve_at(f, g, static_cast<int>(k)); });
    return PowerSeries(std::move(v));
}

PowerSeries multiply_serial(const PowerSeries& f, const PowerSeries& g, int out_order) {
    check_out_order(out_order);
    std::vector<cplx> v(static_cast<std::size_t>(out_order) + 1);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = convolve_at(f, g, static_cast<int>(k));
    return PowerSeries(std::move(v));
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g, int out_order) {
    check_out_order(out_order);
    PowerSeries acc = PowerSeries::monomial(0, f.coeff(f.order()));
    for (int n = f.order() - 1; n >= 0; --n) {
        acc = multiply(acc, g, out_order);
        std::vector<cplx> v = acc.coeffs();
        v.resize(static_cast<std::size_t>(out_order) + 1);
        v[0] += f.coeff(n);
        acc = PowerSeries(std::move(v));
    }
    std::vector<cplx> v = acc.coeffs();
    v.resize(static_cast<std::size_t>(out_order) + 1);
    return PowerSeries(std::move(v));
}

cplx evaluate(const PowerSeries& f, cplx z) {
    cplx acc = f.coeff(f.order());
    for (int n = f.order() - 1; n >= 0; --n) acc = acc * z + f.coeff(n);
    return acc;
}

} // namespace dphi
