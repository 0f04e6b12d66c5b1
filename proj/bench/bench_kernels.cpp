// Times the parallel kernels against their serial reference implementations
// and reports the largest result difference (expected to be exactly zero:
// both paths use the same reduction order).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "dphi/comp_diff.hpp"
#include "dphi/diagnostics.hpp"
#include "dphi/power_series.hpp"
#include "dphi/quadrature.hpp"

using namespace dphi;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_of(F&& f) {
    const auto t0 = clock_type::now();
    f();
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, double max_diff) {
    std::printf("%-18s %10.4f s %10.4f s %8.2fx   max diff %.3e\n", name, serial_s,
                parallel_s, serial_s / parallel_s, max_diff);
}

} // namespace

int main() {
    std::printf("%-18s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        std::mt19937 gen(2024u);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<cplx> a(2001), b(2001);
        for (auto& x : a) x = cplx(unit(gen), unit(gen));
        for (auto& x : b) x = cplx(unit(gen), unit(gen));
        const PowerSeries f(std::move(a)), g(std::move(b));
        PowerSeries rs = PowerSeries::zero(0), rp = PowerSeries::zero(0);
        const double ts = time_of([&] { rs = multiply_serial(f, g, 4000); });
        const double tp = time_of([&] { rp = multiply(f, g, 4000); });
        double diff = 0.0;
        for (int n = 0; n <= 4000; ++n)
            diff = std::max(diff, std::abs(rs.coeff(n) - rp.coeff(n)));
        row("multiply", ts, tp, diff);
    }

    {
        const DiskQuadrature q = DiskQuadrature::make(QuadSpec{512, 1024, 2});
        const Measure mu = Measure::weighted(0.5);
        auto f = [](cplx z) { return std::exp(-std::norm(z)) * (1.0 + z.real()); };
        double vs = 0.0, vp = 0.0;
        const double ts = time_of([&] { vs = integrate_disk_serial(f, mu, q); });
        const double tp = time_of([&] { vp = integrate_disk(f, mu, q); });
        row("integrate_disk", ts, tp, std::abs(vs - vp));
    }

    {
        const SelfMap m = SelfMap::parse("poly:0,0,0.5");
        const SpaceParams p(0.5);
        OperatorMatrix ms{}, mp{};
        const double ts = time_of([&] { ms = build_matrix_serial(m, p, 300, 300); });
        const double tp = time_of([&] { mp = build_matrix(m, p, 300, 300); });
        double diff = 0.0;
        for (int k = 0; k <= 300; ++k)
            for (int n = 0; n <= 300; ++n)
                diff = std::max(diff, std::abs(ms.at(k, n) - mp.at(k, n)));
        row("build_matrix", ts, tp, diff);
    }

    {
        const SelfMap m = SelfMap::parse("poly:0,0.9,0.05");
        const SpaceParams p(0.5);
        const std::vector<double> shells = standard_shells();
        BoundednessReport rs{}, rp{};
        const double ts = time_of([&] { rs = radial_profile_serial(m, p, shells, 256); });
        const double tp = time_of([&] { rp = radial_profile(m, p, shells, 256); });
        double diff = 0.0;
        for (std::size_t i = 0; i < rs.samples.size(); ++i)
            diff = std::max(diff, std::abs(rs.samples[i].max_b - rp.samples[i].max_b));
        row("radial_profile", ts, tp, diff);
    }

    return 0;
}
