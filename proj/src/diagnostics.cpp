#include "dphi/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "dphi/comp_diff.hpp"
#include "dphi/errors.hpp"
#include "dphi/parallel.hpp"

namespace dphi {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) throw numeric_failure("cannot format double");
    return std::string(buf, res.ptr);
}

Verdict verdict_of(Trend t) {
    switch (t) {
        case Trend::decaying_to_zero:
            return Verdict::compact_evidence;
        case Trend::diverging:
            return Verdict::unbounded_evidence;
        case Trend::bounded_plateau:
            return Verdict::bounded_noncompact_evidence;
        case Trend::inconclusive:
            return Verdict::inconclusive;
    }
    return Verdict::inconclusive;
}

constexpr double kSkipped = -1.0;
constexpr double kFailed = -2.0;

BoundednessReport profile_impl(const SelfMap& m, const SpaceParams& p,
                               const std::vector<double>& shells, int points_per_shell,
                               bool serial) {
    if (shells.empty()) throw invalid_spec("profile needs at least one shell");
    for (std::size_t i = 0; i < shells.size(); ++i) {
        if (!(shells[i] > 0.0) || !(shells[i] < 1.0))
            throw invalid_spec("shell radii must lie in (0, 1), got " + fmt_double(shells[i]));
        if (i > 0 && !(shells[i] > shells[i - 1]))
            throw invalid_spec("shell radii must be strictly increasing");
    }
    if (!(shells.back() >= 1.0 - 1e-4))
        throw invalid_spec("outermost shell must reach at least 1 - 1e-4, got " +
                           fmt_double(shells.back()));
    if (points_per_shell < 1) throw invalid_spec("points per shell must be >= 1");

    const std::size_t S = shells.size();
    const std::size_t P = static_cast<std::size_t>(points_per_shell);
    const cplx origin_image = m.eval(cplx(0.0, 0.0));
    std::vector<double> slots(S * P);

    auto sample = [&](std::size_t idx) {
        const std::size_t si = idx / P;
        const std::size_t j = idx % P;
        const double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(P);
        const cplx w = std::polar(shells[si], ang);
        if (w == origin_image) {
            slots[idx] = kSkipped;
            return;
        }
        try {
            slots[idx] = b_functional(m, p, w);
        } catch (const numeric_failure&) {
            // One bad node degrades the sample, not the whole profile;
            // parameter-level invalid_spec still propagates.
            slots[idx] = kFailed;
        }
    };
    if (serial)
        for (std::size_t idx = 0; idx < slots.size(); ++idx) sample(idx);
    else
        parallel_for(slots.size(), sample);

    BoundednessReport rep;
    rep.map_spec = m.spec_string();
    rep.alpha = p.alpha;
    rep.samples.resize(S);
    std::size_t valid = 0;
    for (std::size_t si = 0; si < S; ++si) {
        double mx = 0.0;
        for (std::size_t j = 0; j < P; ++j) {
            double v = slots[si * P + j];
            if (v >= 0.0) {
                mx = std::max(mx, v);
                ++valid;
            }
        }
        rep.samples[si] = {shells[si], mx};
        rep.sup_estimate = std::max(rep.sup_estimate, mx);
    }
    if (valid == 0) {
        rep.outer_trend = Trend::inconclusive;
        rep.verdict = Verdict::inconclusive;
        return rep;
    }
    rep.outer_trend = classify_trend(rep.samples, rep.sup_estimate);
    rep.verdict = verdict_of(rep.outer_trend);
    return rep;
}

} // namespace

const char* to_string(Trend t) {
    switch (t) {
        case Trend::decaying_to_zero:
            return "decaying-to-zero";
        case Trend::bounded_plateau:
            return "bounded-plateau";
        case Trend::diverging:
            return "diverging";
        case Trend::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::compact_evidence:
            return "compact-evidence";
        case Verdict::bounded_noncompact_evidence:
            return "bounded-noncompact-evidence";
        case Verdict::unbounded_evidence:
            return "unbounded-evidence";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

std::string BoundednessReport::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["map"] = map_spec;
    j["alpha"] = alpha;
    nlohmann::json arr = nlohmann::json::array();
    for (const ShellSample& s : samples)
        arr.push_back({{"radius", s.radius}, {"max_b", s.max_b}});
    j["shells"] = arr;
    j["sup_estimate"] = sup_estimate;
    j["outer_trend"] = to_string(outer_trend);
    j["verdict"] = to_string(verdict);
    return j.dump(2);
}

std::string BoundednessReport::to_csv() const {
    std::string out = "radius,max_b\n";
    for (const ShellSample& s : samples)
        out += fmt_double(s.radius) + "," + fmt_double(s.max_b) + "\n";
    return out;
}

double b_functional(const SelfMap& m, const SpaceParams& p, cplx w) {
    if (!(std::abs(w) < 1.0))
        throw invalid_spec("the boundedness functional needs |w| < 1, got |w| = " +
                           std::to_string(std::abs(w)));
    double n = counting_value(m, p, w).value;
    return n / std::pow(1.0 - std::norm(w), p.alpha + 2.0);
}

double univalent_b(const SelfMap& m, const SpaceParams& p, cplx w) {
    if (!m.univalent())
        throw invalid_spec("the parametric functional needs a univalent map");
    if (!(std::abs(w) < 1.0))
        throw invalid_spec("the parametric functional needs |w| < 1, got |w| = " +
                           std::to_string(std::abs(w)));
    double num = std::pow(1.0 - std::norm(w), p.alpha);
    double den = std::pow(1.0 - std::norm(m.eval(w)), p.alpha + 2.0);
    return num / den;
}

std::vector<double> standard_shells(int count) {
    if (count < 1) throw invalid_spec("shell count must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k)
        out[static_cast<std::size_t>(k - 1)] = 1.0 - std::pow(2.0, -k);
    return out;
}

BoundednessReport radial_profile(const SelfMap& m, const SpaceParams& p,
                                 const std::vector<double>& shells, int points_per_shell) {
    return profile_impl(m, p, shells, points_per_shell, /*serial=*/false);
}

BoundednessReport radial_profile_serial(const SelfMap& m, const SpaceParams& p,
                                        const std::vector<double>& shells,
                                        int points_per_shell) {
    return profile_impl(m, p, shells, points_per_shell, /*serial=*/true);
}

Trend classify_trend(const std::vector<ShellSample>& samples, double sup_estimate) {
    if (samples.size() < 3) return Trend::inconclusive;
    const std::size_t n = samples.size();
    const std::size_t win = std::min<std::size_t>(6, n);
    const double s0 = samples[n - win].max_b;
    const double s5 = samples[n - 1].max_b;
    const double o1 = samples[n - 3].max_b;
    const double o2 = samples[n - 2].max_b;
    const double o3 = samples[n - 1].max_b;

    if (o1 == 0.0 && o2 == 0.0 && o3 == 0.0) return Trend::decaying_to_zero;
    if (s5 > 10.0 * s0 && s5 > 1e3) return Trend::diverging;
    if (s5 < 0.1 * s0 && s5 < 1e-3 * sup_estimate) return Trend::decaying_to_zero;
    double lo = std::min({o1, o2, o3});
    double hi = std::max({o1, o2, o3});
    if (lo > 0.0 && hi / lo <= 2.0) return Trend::bounded_plateau;
    return Trend::inconclusive;
}

BoundednessReport diagnose(const SelfMap& m, const SpaceParams& p) {
    return radial_profile(m, p, standard_shells(), 256);
}

EssentialBracket essential_norm_bracket(const SelfMap& m, const SpaceParams& p) {
    bool supported = m.kind() == SelfMap::Kind::dilation || m.kind() == SelfMap::Kind::lens ||
                     (m.kind() == SelfMap::Kind::polynomial && m.sup_norm_bound() < 1.0);
    if (!supported)
        throw invalid_spec(
            "essential-norm evidence supports dilation, lens, and strictly "
            "contractive polynomial maps");

    BoundednessReport rep = diagnose(m, p);
    EssentialBracket out;
    out.shell_b_side = std::sqrt(rep.samples.back().max_b);
    double rho = rep.samples.back().radius;
    for (int j = 0; j < 8; ++j) {
        cplx w = std::polar(rho, 2.0 * M_PI * j / 8.0);
        out.test_fn_side = std::max(out.test_fn_side, test_function_image_norm(m, p, w));
    }
    return out;
}

double monotonicity_check(const SelfMap& m, double alpha, double gamma) {
    if (!m.fixes_origin())
        throw invalid_spec("the weight-monotonicity comparison needs phi(0) = 0");
    SpaceParams pa(alpha), pg(gamma);
    if (!(alpha <= gamma))
        throw invalid_spec("the weight-monotonicity comparison needs alpha <= gamma");

    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 10; ++k) {
        double rho = 1.0 - std::pow(2.0, -k);
        for (int j = 0; j < 64; ++j) {
            cplx w = std::polar(rho, 2.0 * M_PI * j / 64.0);
            if (w == cplx(0.0, 0.0)) continue;
            worst = std::max(worst, b_functional(m, pg, w) - b_functional(m, pa, w));
        }
    }
    return worst;
}

bool small_supnorm_compactness(const SelfMap& m, const SpaceParams& p) {
    double sup = m.sup_norm_bound();
    if (!(sup < 1.0))
        throw invalid_spec("the support check needs sup|phi| < 1; got bound " +
                           std::to_string(sup));
    const cplx origin_image = m.eval(cplx(0.0, 0.0));
    for (double rho : standard_shells()) {
        if (!(rho > sup)) continue;
        for (int j = 0; j < 256; ++j) {
            cplx w = std::polar(rho, 2.0 * M_PI * j / 256.0);
            if (w == origin_image) continue;
            if (b_functional(m, p, w) != 0.0) return false;
        }
    }
    return true;
}

} // namespace dphi
