#pragma once

// Boundedness/compactness evidence engine. Evaluates the functional
//   B(w) = N(w) / (1 - |w|^2)^{alpha+2}
// on concentric shell grids approaching the boundary, classifies the outward
// trend with a declared deterministic rule, and reports the verdict together
// with the raw profile so a reader can override it.

#include <string>
#include <vector>

#include "dphi/counting.hpp"
#include "dphi/self_map.hpp"
#include "dphi/space.hpp"

namespace dphi {

enum class Trend { decaying_to_zero, bounded_plateau, diverging, inconclusive };
enum class Verdict {
    compact_evidence,
    bounded_noncompact_evidence,
    unbounded_evidence,
    inconclusive
};

const char* to_string(Trend t);
const char* to_string(Verdict v);

struct ShellSample {
    double radius = 0.0;
    double max_b = 0.0;
};

struct BoundednessReport {
    std::string map_spec;
    double alpha = 0.0;
    std::vector<ShellSample> samples;
    double sup_estimate = 0.0;
    Trend outer_trend = Trend::inconclusive;
    Verdict verdict = Verdict::inconclusive;

    std::string to_json() const;
    std::string to_csv() const;
};

// B(w) by the counting route for m's kind. Rejects w = phi(0).
double b_functional(const SelfMap& m, const SpaceParams& p, cplx w);

// The same functional evaluated parametrically at phi(w) for univalent maps:
// (1 - |w|^2)^alpha / (1 - |phi(w)|^2)^{alpha+2}; needs no inversion.
double univalent_b(const SelfMap& m, const SpaceParams& p, cplx w);

// Default grid: shells 1 - 2^{-k}, k = 1..14, 256 points per shell.
std::vector<double> standard_shells(int count = 14);

// Per-shell max of B over equally spaced angles; grid points equal to phi(0)
// are skipped. Shells must be strictly increasing in (0,1) and reach at
// least 1 - 1e-4. Parallel over samples; deterministic.
BoundednessReport radial_profile(const SelfMap& m, const SpaceParams& p,
                                 const std::vector<double>& shells, int points_per_shell);
// Single-threaded reference; identical output.
BoundednessReport radial_profile_serial(const SelfMap& m, const SpaceParams& p,
                                        const std::vector<double>& shells,
                                        int points_per_shell);

// Deterministic trend rule over the outermost six shells s0..s5:
//   all of the outer three exactly 0                  -> decaying-to-zero
//   s5 > 10 s0 and s5 > 1e3                           -> diverging
//   s5 < 0.1 s0 and s5 < 1e-3 sup_estimate            -> decaying-to-zero
//   outer three within a factor 2 of one another      -> bounded-plateau
//   otherwise                                         -> inconclusive
Trend classify_trend(const std::vector<ShellSample>& samples, double sup_estimate);

// radial_profile on the standard grid.
BoundednessReport diagnose(const SelfMap& m, const SpaceParams& p);

// Two sides of the essential-norm evidence: sqrt of the outermost-shell max
// of B, and the max of ||T f_w|| over the outermost shell. The underlying
// characterizations hold only up to unspecified equivalence constants, so
// these are reported side by side without asserting a containment.
struct EssentialBracket {
    double shell_b_side = 0.0;
    double test_fn_side = 0.0;
};

EssentialBracket essential_norm_bracket(const SelfMap& m, const SpaceParams& p);

// Max over a fixed grid of B_gamma(w) - B_alpha(w) for a map fixing the
// origin and alpha <= gamma; the pointwise inequality makes this <= 0 up to
// rounding.
double monotonicity_check(const SelfMap& m, double alpha, double gamma);

// For maps with sup|phi| < 1: true iff B vanishes identically on all grid
// points outside the closed support disk |w| <= sup bound.
bool small_supnorm_compactness(const SelfMap& m, const SpaceParams& p);

} // namespace dphi
