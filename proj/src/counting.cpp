#include "dphi/counting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "dphi/errors.hpp"

namespace dphi {

namespace {

constexpr double kBoundaryRing = 1e-10;

cplx horner(const std::vector<cplx>& a, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
    return acc;
}

cplx horner_derivative(const std::vector<cplx>& a, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = a.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * a[i];
    return acc;
}

// Scale-aware residual of a candidate root.
double root_residual(const std::vector<cplx>& a, cplx z) {
    double scale = 0.0;
    double zp = 1.0;
    double az = std::max(1.0, std::abs(z));
    for (const cplx& c : a) {
        scale += std::abs(c) * zp;
        zp *= az;
    }
    if (scale == 0.0) scale = 1.0;
    return std::abs(horner(a, z)) / scale;
}

void check_roots(const std::vector<cplx>& a, const std::vector<cplx>& roots,
                 const char* method) {
    double worst = 0.0;
    cplx at{};
    for (cplx z : roots) {
        double r = root_residual(a, z);
        if (r > worst) {
            worst = r;
            at = z;
        }
    }
    if (worst > 1e-8)
        throw numeric_failure(std::string(method) + " root solve left relative residual " +
                              std::to_string(worst) + " at z = " + format_complex(at));
}

std::vector<cplx> roots_companion(const std::vector<cplx>& a) {
    const std::size_t d = a.size() - 1;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -a[i] / a[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw numeric_failure("companion-matrix eigenvalue solve failed");
    std::vector<cplx> roots(d);
    for (std::size_t i = 0; i < d; ++i) roots[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    check_roots(a, roots, "companion");
    return roots;
}

std::vector<cplx> roots_aberth(const std::vector<cplx>& a) {
    const std::size_t d = a.size() - 1;
    double radius = 0.0;
    for (std::size_t i = 0; i < d; ++i) radius = std::max(radius, std::abs(a[i] / a[d]));
    radius += 1.0;

    std::vector<cplx> z(d);
    for (std::size_t j = 0; j < d; ++j) {
        double ang = 2.0 * M_PI * (static_cast<double>(j) + 0.25) / static_cast<double>(d);
        z[j] = std::polar(radius, ang);
    }

    std::vector<cplx> step(d);
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            cplx p = horner(a, z[j]);
            if (p == cplx(0.0, 0.0)) {
                step[j] = 0.0;
                continue;
            }
            cplx dp = horner_derivative(a, z[j]);
            if (dp == cplx(0.0, 0.0)) {
                // Saddle of |p|; nudge off it deterministically.
                step[j] = cplx(-1e-6 * radius, 1e-6 * radius);
                z[j] -= step[j];
                worst = std::max(worst, std::abs(step[j]));
                continue;
            }
            cplx newton = p / dp;
            cplx repulsion = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                if (k != j) repulsion += cplx(1.0, 0.0) / (z[j] - z[k]);
            step[j] = newton / (cplx(1.0, 0.0) - newton * repulsion);
            z[j] -= step[j];
            worst = std::max(worst, std::abs(step[j]) / (1.0 + std::abs(z[j])));
        }
        if (worst <= 1e-13) {
            check_roots(a, z, "aberth");
            return z;
        }
    }
    double worst = 0.0;
    for (cplx zj : z) worst = std::max(worst, root_residual(a, zj));
    throw numeric_failure("aberth iteration did not converge; worst relative residual " +
                          std::to_string(worst));
}

void reject_origin_image(const SelfMap& m, cplx w) {
    if (w == m.eval(cplx(0.0, 0.0)))
        throw invalid_spec("the counting function is undefined at w = phi(0) = " +
                           format_complex(w));
}

double pow_clamped(double base, double alpha) {
    return base > 0.0 ? std::pow(base, alpha) : 0.0;
}

CountingSample univalent_impl(const SelfMap& m, const SpaceParams& p, cplx w) {
    CountingSample s;
    s.w = w;
    s.route = CountingRoute::univalent_closed_form;
    if (!(std::abs(w) < 1.0)) return s;

    switch (m.kind()) {
        case SelfMap::Kind::dilation: {
            cplx z = w / m.dilation_factor();
            s.value = pow_clamped(1.0 - std::norm(z), p.alpha);
            return s;
        }
        case SelfMap::Kind::automorphism: {
            // phi^{-1}(w) = phi_beta(conj(eta) w); the standard identity gives
            // 1 - |phi_beta(u)|^2 = (1-|beta|^2)(1-|u|^2)/|1-conj(beta)u|^2.
            cplx u = std::conj(m.eta()) * w;
            double num = (1.0 - std::norm(m.beta())) * (1.0 - std::norm(u));
            double den = std::norm(cplx(1.0, 0.0) - std::conj(m.beta()) * u);
            s.value = pow_clamped(num / den, p.alpha);
            return s;
        }
        case SelfMap::Kind::lens: {
            double delta = m.lens_delta();
            cplx a = std::log((cplx(1.0, 0.0) + w) / (cplx(1.0, 0.0) - w));
            if (!(std::abs(a.imag()) < delta * M_PI / 2.0)) return s; // outside the image
            double x = a.real() / delta;
            double y = a.imag() / delta;
            // Preimage z = (e^{a/delta}-1)/(e^{a/delta}+1);
            // 1-|z|^2 = 4 e^x cos y / (e^{2x} + 2 e^x cos y + 1) exactly, and
            // ~ 4 cos(y) e^{-|x|} in the far tails where e^{2x} overflows or
            // underflows.
            if (std::abs(x) <= 300.0) {
                double ex = std::exp(x);
                double one_minus = 4.0 * ex * std::cos(y) / (ex * ex + 2.0 * ex * std::cos(y) + 1.0);
                s.value = pow_clamped(one_minus, p.alpha);
            } else {
                double log_one_minus = std::log(4.0 * std::cos(y)) - std::abs(x);
                s.value = std::exp(p.alpha * log_one_minus);
            }
            return s;
        }
        default:
            throw invalid_spec("closed-form counting inverse needs a univalent catalog map");
    }
}

CountingSample polynomial_impl(const SelfMap& m, const SpaceParams& p, cplx w,
                               RootMethod method) {
    if (m.kind() != SelfMap::Kind::polynomial)
        throw invalid_spec("root-finding counting route needs a polynomial map");
    const std::vector<cplx>& c = m.poly_coeffs();
    if (c.size() < 2)
        throw invalid_spec("root-finding counting route needs polynomial degree >= 1");

    std::vector<cplx> shifted = c;
    shifted[0] -= w;
    std::vector<cplx> roots = polynomial_roots(shifted, method);

    CountingSample s;
    s.w = w;
    s.route = CountingRoute::polynomial_roots;
    for (cplx z : roots) {
        double az = std::abs(z);
        if (az <= 1.0 - kBoundaryRing)
            s.value += std::pow(1.0 - az * az, p.alpha);
        else if (az < 1.0 + kBoundaryRing)
            s.boundary_flagged = true;
    }
    return s;
}

// One series term of the exponential-map preimage sum.
double exp_term(double L, double alpha, double k) {
    double den = (L - 1.0) * (L - 1.0) + 4.0 * M_PI * M_PI * k * k;
    return std::pow(-4.0 * L / den, alpha);
}

// d/dx of the term viewed as a function of a continuous index x.
double exp_term_dx(double L, double alpha, double x) {
    double B = (L - 1.0) * (L - 1.0);
    double q = B + 4.0 * M_PI * M_PI * x * x;
    return std::pow(-4.0 * L, alpha) * (-alpha) * std::pow(q, -alpha - 1.0) * 8.0 * M_PI * M_PI * x;
}

// integral_{K+1/2}^{infty} term(x) dx by the substitution t = 2 pi x and a
// binomial expansion of (B + t^2)^{-alpha} valid for t > sqrt(B).
double exp_tail_integral(double L, double alpha, double K) {
    double B = (L - 1.0) * (L - 1.0);
    double D = -4.0 * L;
    double M = 2.0 * M_PI * (K + 0.5);
    if (!(M * M > 4.0 * B))
        throw numeric_failure("exponential-series tail expansion out of range");
    double sum = 0.0;
    double binom = 1.0; // binom(-alpha, j), starting at j = 0
    double Bj = 1.0;    // B^j
    double Mp = std::pow(M, 1.0 - 2.0 * alpha);
    const double M2 = M * M;
    for (int j = 0; j < 400; ++j) {
        double term = binom * Bj * Mp / (2.0 * alpha + 2.0 * j - 1.0);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum) && j > 2) break;
        binom *= (-alpha - j) / (j + 1.0);
        Bj *= B;
        Mp /= M2;
    }
    return std::pow(D, alpha) / (2.0 * M_PI) * sum;
}

CountingSample exp_impl(const SpaceParams& p, cplx w) {
    if (w == cplx(0.0, 0.0))
        throw invalid_spec("the exponential-map counting series needs w != 0");
    if (!(p.alpha > 0.5))
        throw invalid_spec(
            "the exponential-map counting series diverges for alpha <= 1/2; got alpha = " +
            std::to_string(p.alpha));

    CountingSample s;
    s.w = w;
    s.route = CountingRoute::exp_series;
    double L = std::log(std::abs(w));
    if (!(L < 0.0)) return s; // no preimages in the disk

    double partial = 0.0;
    long K = 64;
    for (long k = 0; k <= K; ++k) partial += exp_term(L, p.alpha, static_cast<double>(k));
    while (true) {
        double ks = static_cast<double>(K) + 0.5;
        bool tail_ok = 2.0 * M_PI * ks > 2.0 * std::abs(L - 1.0);
        if (tail_ok && std::abs(exp_term_dx(L, p.alpha, ks)) / 24.0 < 1e-10 * partial) break;
        long next = 2 * K;
        if (next > (1L << 26))
            throw numeric_failure("exponential-series partial sum did not stabilize");
        for (long k = K + 1; k <= next; ++k)
            partial += exp_term(L, p.alpha, static_cast<double>(k));
        K = next;
    }
    double tail = exp_tail_integral(L, p.alpha, static_cast<double>(K)) +
                  exp_term_dx(L, p.alpha, static_cast<double>(K) + 0.5) / 24.0;
    s.value = partial + tail;
    return s;
}

// Dispatch without the phi(0) rejection; used on quadrature grids where the
// excluded point carries no area.
CountingSample counting_raw(const SelfMap& m, const SpaceParams& p, cplx w,
                            RootMethod method) {
    switch (m.kind()) {
        case SelfMap::Kind::dilation:
        case SelfMap::Kind::automorphism:
        case SelfMap::Kind::lens:
            return univalent_impl(m, p, w);
        case SelfMap::Kind::polynomial:
            return polynomial_impl(m, p, w, method);
        case SelfMap::Kind::singular_exp:
            return exp_impl(p, w);
    }
    throw invalid_spec("corrupt map kind");
}

} // namespace

const char* to_string(CountingRoute route) {
    switch (route) {
        case CountingRoute::univalent_closed_form:
            return "univalent-closed-form";
        case CountingRoute::polynomial_roots:
            return "polynomial-roots";
        case CountingRoute::exp_series:
            return "exp-series";
    }
    return "unknown";
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs, RootMethod method) {
    if (coeffs.size() < 2 || coeffs.back() == cplx(0.0, 0.0))
        throw invalid_spec("root solve needs degree >= 1 and a nonzero leading coefficient");
    for (const cplx& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw invalid_spec("root solve needs finite coefficients");
    return method == RootMethod::companion ? roots_companion(coeffs) : roots_aberth(coeffs);
}

CountingSample counting_univalent(const SelfMap& m, const SpaceParams& p, cplx w) {
    if (!m.univalent())
        throw invalid_spec("closed-form counting inverse needs a univalent catalog map");
    reject_origin_image(m, w);
    if (m.kind() == SelfMap::Kind::polynomial) return polynomial_impl(m, p, w, RootMethod::companion);
    return univalent_impl(m, p, w);
}

CountingSample counting_polynomial(const SelfMap& m, const SpaceParams& p, cplx w,
                                   RootMethod method) {
    reject_origin_image(m, w);
    return polynomial_impl(m, p, w, method);
}

CountingSample counting_exp(const SpaceParams& p, cplx w) {
    if (w == std::exp(cplx(-1.0, 0.0)))
        throw invalid_spec("the counting function is undefined at w = phi(0) = " +
                           format_complex(w));
    return exp_impl(p, w);
}

CountingSample counting_value(const SelfMap& m, const SpaceParams& p, cplx w,
                              RootMethod method) {
    reject_origin_image(m, w);
    return counting_raw(m, p, w, method);
}

double cov_residual(const SelfMap& m, const SpaceParams& p, int test_exponent,
                    const DiskQuadrature& q) {
    if (m.kind() != SelfMap::Kind::dilation && m.kind() != SelfMap::Kind::polynomial)
        throw invalid_spec("change-of-variable residual supports dilation and polynomial maps");
    if (test_exponent < 0)
        throw invalid_spec("change-of-variable test exponent must be >= 0, got " +
                           std::to_string(test_exponent));

    auto f = [test_exponent](cplx u) {
        return std::pow(1.0 - std::norm(u), static_cast<double>(test_exponent));
    };

    double lhs = integrate_disk(
        [&](cplx z) { return f(m.eval(z)) * std::norm(m.derivative(z)); },
        Measure::weighted(p.alpha), q);

    double R = std::min(1.0, m.sup_norm_bound());
    double rhs = R * R *
                 integrate_disk(
                     [&](cplx v) {
                         cplx u = R * v;
                         return f(u) * counting_raw(m, p, u, RootMethod::companion).value;
                     },
                     Measure::plain(), q);

    if (!(rhs > 0.0)) throw numeric_failure("change-of-variable reference integral vanished");
    return std::abs(lhs - rhs) / rhs;
}

} // namespace dphi
