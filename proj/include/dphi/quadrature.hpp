#pragma once

// Tensor quadrature on the unit disk with respect to normalized area measure
// dA (total mass 1) or the weighted measure dA_alpha = (1-|z|^2)^alpha dA.
// Radial direction: Gauss-Legendre in a substituted variable r = 1-(1-t)^p,
// which clusters nodes toward the boundary circle where the integrands of
// interest concentrate or degenerate. Angular direction: uniform trapezoid
// (spectrally accurate for periodic integrands).

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace dphi {

// Resolution/clustering knobs (config keys quad.radial, quad.angular,
// quad.cluster_exponent).
struct QuadSpec {
    int radial = 256;
    int angular = 512;
    double cluster_exponent = 2.0; // >= 1
};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// three-term recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct DiskQuadrature {
    std::vector<double> r; // radial nodes, strictly inside (0, 1)
    std::vector<double> u; // radial weights including Jacobian and radius factor
    int angular = 0;       // theta_j = 2*pi*j/angular
    double cluster_exponent = 2.0;

    static DiskQuadrature make(const QuadSpec& spec);
};

// Measure selector for integrate_disk.
struct Measure {
    std::optional<double> alpha; // nullopt: plain dA; value: dA_alpha, alpha > -1

    static Measure plain() { return {}; }
    static Measure weighted(double alpha);
};

// Integral of a real-valued grid function over the unit disk. Parallel over
// radial rows; per-row angular sums and the final pairwise reduction run in
// a fixed order, so the value is independent of thread count. Non-finite
// node values raise numeric_failure naming the node.
double integrate_disk(const std::function<double(std::complex<double>)>& g,
                      const Measure& measure, const DiskQuadrature& q);

// Single-threaded reference with the same row and reduction order as
// integrate_disk, so the two agree bit for bit; kept for testing and
// benchmarking the parallel kernel against.
double integrate_disk_serial(const std::function<double(std::complex<double>)>& g,
                             const Measure& measure, const DiskQuadrature& q);

} // namespace dphi
