#include "dphi/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dphi/errors.hpp"
#include "dphi/parallel.hpp"

namespace dphi {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw invalid_spec("Gauss-Legendre order must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Evaluate P_n and P_n' by the recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

DiskQuadrature DiskQuadrature::make(const QuadSpec& spec) {
    if (spec.radial < 1 || spec.angular < 1)
        throw invalid_spec("quadrature resolution must be positive");
    if (spec.cluster_exponent < 1.0)
        throw invalid_spec("quad.cluster_exponent must be >= 1");
    std::vector<double> t, v;
    gauss_legendre(spec.radial, t, v);
    DiskQuadrature q;
    q.angular = spec.angular;
    q.cluster_exponent = spec.cluster_exponent;
    q.r.resize(t.size());
    q.u.resize(t.size());
    const double p = spec.cluster_exponent;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double ti = 0.5 * (t[i] + 1.0); // map to [0, 1]
        const double vi = 0.5 * v[i];
        const double one_m = 1.0 - ti;
        const double ri = 1.0 - std::pow(one_m, p);
        q.r[i] = ri;
        // Weight: GL weight * substitution Jacobian p(1-t)^{p-1} * radius r
        // from the polar area element.
        q.u[i] = vi * p * std::pow(one_m, p - 1.0) * ri;
    }
    return q;
}

Measure Measure::weighted(double alpha) {
    if (!(alpha > -1.0))
        throw invalid_spec("measure exponent must be > -1, got " + std::to_string(alpha));
    Measure m;
    m.alpha = alpha;
    return m;
}

namespace {

double node_value(const std::function<double(std::complex<double>)>& g,
                  const Measure& measure, double r, double theta) {
    const std::complex<double> z = std::polar(r, theta);
    double val = g(z);
    if (measure.alpha) val *= std::pow(1.0 - r * r, *measure.alpha);
    if (!std::isfinite(val))
        throw numeric_failure("non-finite integrand value at node r=" + std::to_string(r) +
                              " theta=" + std::to_string(theta));
    return val;
}

} // namespace

double integrate_disk(const std::function<double(std::complex<double>)>& g,
                      const Measure& measure, const DiskQuadrature& q) {
    const double dtheta = 2.0 * std::numbers::pi / q.angular;
    const double ang_w = 2.0 / q.angular; // combines trapezoid weight and 1/pi
    std::vector<double> rows(q.r.size());
    parallel_for(q.r.size(), [&](std::size_t i) {
        double acc = 0.0;
        for (int j = 0; j < q.angular; ++j) acc += node_value(g, measure, q.r[i], j * dtheta);
        rows[i] = acc * ang_w * q.u[i];
    });
    return pairwise_sum(rows);
}

double integrate_disk_serial(const std::function<double(std::complex<double>)>& g,
                             const Measure& measure, const DiskQuadrature& q) {
    // Same row/reduction order as integrate_disk so results are bit-identical.
    const double dtheta = 2.0 * std::numbers::pi / q.angular;
    const double ang_w = 2.0 / q.angular;
    std::vector<double> rows(q.r.size());
    for (std::size_t i = 0; i < q.r.size(); ++i) {
        double acc = 0.0;
        for (int j = 0; j < q.angular; ++j) acc += node_value(g, measure, q.r[i], j * dtheta);
        rows[i] = acc * ang_w * q.u[i];
    }
    return pairwise_sum(rows);
}

} // namespace dphi
