#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dphi/comp_diff.hpp"
#include "dphi/counting.hpp"
#include "dphi/diagnostics.hpp"
#include "dphi/errors.hpp"
#include "dphi/run_config.hpp"

namespace {

using namespace dphi;

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw invalid_spec("cannot open output file \"" + cfg.out + "\"");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

DiskQuadrature quad_of(const RunConfig& cfg) {
    QuadSpec spec;
    spec.radial = cfg.quad_radial;
    spec.angular = cfg.quad_angular;
    return DiskQuadrature::make(spec);
}

RootMethod roots_of(const RunConfig& cfg) {
    return cfg.roots == "aberth" ? RootMethod::aberth : RootMethod::companion;
}

int cmd_norm(const RunConfig& cfg) {
    SelfMap m = SelfMap::parse(cfg.map_spec);
    SpaceParams p(cfg.alpha);
    if (!m.has_series())
        throw invalid_spec(
            "map \"" + cfg.map_spec +
            "\" has no series truncation, so no matrix norm is computed; run the "
            "diagnose command for boundedness and compactness evidence instead");

    OperatorMatrix mat = build_matrix(m, p, cfg.order, cfg.order);
    double matrix_norm = operator_norm(mat, cfg.tol);

    bool dil = m.kind() == SelfMap::Kind::dilation;
    ClosedFormDilationNorm cf;
    if (dil) cf = closed_form_dilation_norm(m.dilation_factor(), p);

    if (cfg.format == "json") {
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "norm";
        j["map"] = m.spec_string();
        j["alpha"] = cfg.alpha;
        j["truncation_order"] = cfg.order;
        j["matrix_norm"] = matrix_norm;
        if (dil) {
            j["closed_form"] = cf.norm;
            j["x0"] = cf.x0;
            j["eta"] = cf.eta;
            j["gap"] = std::abs(matrix_norm - cf.norm);
        }
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        std::string text = "quantity,value\nmatrix_norm," + std::to_string(matrix_norm) + "\n";
        if (dil) {
            text += "closed_form," + std::to_string(cf.norm) + "\n";
            text += "x0," + std::to_string(cf.x0) + "\n";
            text += "eta," + std::to_string(cf.eta) + "\n";
            text += "gap," + std::to_string(std::abs(matrix_norm - cf.norm)) + "\n";
        }
        emit(cfg, text);
    } else {
        std::string text = "matrix norm (order " + std::to_string(cfg.order) +
                           "): " + fmt4(matrix_norm) + "\n";
        if (dil) {
            text += "closed form: " + fmt4(cf.norm) + " (x0 = " + fmt4(cf.x0) +
                    ", attained at n = " + std::to_string(cf.eta) + ")\n";
            text += "gap: " + fmt_sci(std::abs(matrix_norm - cf.norm)) + "\n";
        }
        emit(cfg, text);
    }
    return 0;
}

int cmd_profile_like(const RunConfig& cfg, bool standard_grid) {
    SelfMap m = SelfMap::parse(cfg.map_spec);
    SpaceParams p(cfg.alpha);
    BoundednessReport rep =
        standard_grid ? diagnose(m, p)
                      : radial_profile(m, p, standard_shells(cfg.shells), cfg.points);
    if (cfg.format == "json") {
        emit(cfg, rep.to_json());
    } else if (cfg.format == "csv") {
        emit(cfg, rep.to_csv());
    } else {
        std::string text;
        for (const ShellSample& s : rep.samples) {
            char line[96];
            std::snprintf(line, sizeof line, "shell %.6f: max B = %.6g\n", s.radius, s.max_b);
            text += line;
        }
        text += "sup estimate: " + fmt_sci(rep.sup_estimate) + "\n";
        text += std::string("outer trend: ") + to_string(rep.outer_trend) + "\n";
        text += std::string("verdict: ") + to_string(rep.verdict) + "\n";
        emit(cfg, text);
    }
    return 0;
}

int cmd_hs(const RunConfig& cfg, bool order_given) {
    SelfMap m = SelfMap::parse(cfg.map_spec);
    SpaceParams p(cfg.alpha);
    int terms = order_given ? cfg.order
                            : (m.kind() == SelfMap::Kind::dilation ? 2000 : 200);
    HsBasisResult basis = hs_norm_basis(m, p, terms);
    double integral = hs_norm_integral(m, p, quad_of(cfg));
    bool expandable = m.has_series() && m.sup_norm_bound() < 1.0;
    double series = expandable ? hs_norm_series(m, p) : 0.0;

    if (cfg.format == "json") {
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "hs";
        j["map"] = m.spec_string();
        j["alpha"] = cfg.alpha;
        j["basis_sum"] = basis.value;
        j["basis_last_term"] = basis.last_term;
        j["basis_terms"] = terms;
        j["integral_quadrature"] = integral;
        if (expandable) {
            j["integral_series"] = series;
            j["series_vs_quadrature_rel_gap"] = std::abs(series - integral) / integral;
        }
        j["basis_to_integral_ratio"] = basis.value / integral;
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        std::string text = "quantity,value\n";
        text += "basis_sum," + std::to_string(basis.value) + "\n";
        text += "integral_quadrature," + std::to_string(integral) + "\n";
        if (expandable) text += "integral_series," + std::to_string(series) + "\n";
        emit(cfg, text);
    } else {
        std::string text = "basis sum (" + std::to_string(terms) +
                           " terms): " + fmt4(basis.value) +
                           " (last term " + fmt_sci(basis.last_term) + ")\n";
        text += "integral, quadrature: " + fmt4(integral) + "\n";
        if (expandable) {
            text += "integral, expanded series: " + fmt4(series) + "\n";
            text += "series vs quadrature gap: " + fmt_sci(std::abs(series - integral) / integral) + "\n";
        }
        text += "basis/integral ratio: " + fmt4(basis.value / integral) + "\n";
        emit(cfg, text);
    }
    return 0;
}

int cmd_counting(const RunConfig& cfg) {
    SelfMap m = SelfMap::parse(cfg.map_spec);
    SpaceParams p(cfg.alpha);
    if (!cfg.has_w) throw invalid_spec("the counting command needs --w");
    CountingSample s = counting_value(m, p, cfg.w, roots_of(cfg));

    if (cfg.format == "json") {
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "counting";
        j["map"] = m.spec_string();
        j["alpha"] = cfg.alpha;
        j["w"] = format_complex(s.w);
        j["value"] = s.value;
        j["route"] = to_string(s.route);
        j["boundary_flagged"] = s.boundary_flagged;
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        emit(cfg, "w,value,route,boundary_flagged\n" + format_complex(s.w) + "," +
                      std::to_string(s.value) + "," + to_string(s.route) + "," +
                      (s.boundary_flagged ? "true" : "false") + "\n");
    } else {
        std::string text = "counting value at w = " + format_complex(s.w) + ": " +
                           fmt4(s.value) + " (route " + to_string(s.route) + ")\n";
        if (s.boundary_flagged)
            text += "warning: a preimage landed within 1e-10 of the unit circle and was excluded\n";
        emit(cfg, text);
    }
    return 0;
}

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

int cmd_verify(const RunConfig& cfg) {
    std::vector<CheckResult> checks;
    DiskQuadrature q = quad_of(cfg);

    if (cfg.suite == "cov" || cfg.suite == "all") {
        struct Case {
            const char* spec;
            int exponent;
        };
        const Case cases[] = {{"dilation:0.5", 0}, {"dilation:0.5", 1},
                              {"poly:0,0,1", 0},   {"poly:0,0,1", 1}};
        SpaceParams p(cfg.alpha);
        for (const Case& c : cases) {
            double res = cov_residual(SelfMap::parse(c.spec), p, c.exponent, q);
            checks.push_back({std::string("change-of-variable ") + c.spec + " exponent " +
                                  std::to_string(c.exponent),
                              res, 1e-3, res <= 1e-3});
        }
    }
    if (cfg.suite == "kernel" || cfg.suite == "all") {
        SpaceParams p(cfg.alpha);
        std::mt19937 gen(987654321u);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        double worst_k = 0.0, worst_dk = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<cplx> c(21);
            for (auto& x : c) x = cplx(unit(gen), unit(gen));
            PowerSeries f(std::move(c));
            for (int pt = 0; pt < 10; ++pt) {
                cplx w = 0.8 * cplx(unit(gen), unit(gen)) / std::sqrt(2.0);
                worst_k = std::max(worst_k,
                                   std::abs(inner(f, kernel(w, p, f.order()), p) - evaluate(f, w)));
                worst_dk = std::max(worst_dk, std::abs(inner(f, dkernel(w, p, f.order()), p) -
                                                       evaluate(derive(f), w)));
            }
        }
        checks.push_back({"kernel reproduces point values", worst_k, 1e-10, worst_k <= 1e-10});
        checks.push_back(
            {"derivative kernel reproduces derivatives", worst_dk, 1e-10, worst_dk <= 1e-10});
    }

    bool all = true;
    std::string text;
    for (const CheckResult& c : checks) {
        all = all && c.passed;
        text += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  (" +
                fmt_sci(c.value) + " vs " + fmt_sci(c.threshold) + ")\n";
    }
    text += all ? "all checks passed\n" : "some checks FAILED\n";

    if (cfg.format == "json") {
        nlohmann::json j;
        j["schema"] = 1;
        j["command"] = "verify";
        j["suite"] = cfg.suite;
        nlohmann::json arr = nlohmann::json::array();
        for (const CheckResult& c : checks)
            arr.push_back({{"name", c.name},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"passed", c.passed}});
        j["checks"] = arr;
        j["all_passed"] = all;
        emit(cfg, j.dump(2));
    } else {
        emit(cfg, text);
    }
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"norms, counting functions, and compactness evidence for "
                 "composition-differentiation operators on weighted Dirichlet spaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string wtext;

    auto add_common = [&](CLI::App* sub, bool need_map) {
        auto* mopt = sub->add_option("--map", cfg.map_spec,
                                     "map spec: dilation:R | auto:B | lens:D | exp | poly:c0,c1,...");
        if (need_map) mopt->required();
        sub->add_option("--alpha", cfg.alpha, "space parameter in (0,1)")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format: json | csv | human")
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
        sub->add_option("--tol", cfg.tol, "iteration tolerance")->capture_default_str();
        return sub;
    };

    auto* norm = add_common(app.add_subcommand(
                                "norm", "operator norm: matrix truncation, plus the exact "
                                        "closed form for dilations"),
                            true);
    norm->add_option("--order", cfg.order, "matrix truncation order")->capture_default_str();

    add_common(app.add_subcommand("diagnose",
                                  "boundedness/compactness evidence on the standard shell grid"),
               true);

    auto* profile = add_common(
        app.add_subcommand("profile", "shell profile of the boundedness functional"), true);
    profile->add_option("--shells", cfg.shells, "number of shells 1 - 2^{-k}")
        ->capture_default_str();
    profile->add_option("--points", cfg.points, "points per shell")->capture_default_str();

    auto* hs = add_common(
        app.add_subcommand("hs", "Hilbert-Schmidt norm by basis, quadrature, and series routes"),
        true);
    auto* hs_order =
        hs->add_option("--order", cfg.order, "basis-sum term count (default 2000 for "
                                             "dilations, 200 otherwise)");
    hs->add_option("--quad-radial", cfg.quad_radial, "radial quadrature nodes")
        ->capture_default_str();
    hs->add_option("--quad-angular", cfg.quad_angular, "angular quadrature nodes")
        ->capture_default_str();

    auto* counting = add_common(
        app.add_subcommand("counting", "generalized counting function at a point"), true);
    counting->add_option("--w", wtext, "evaluation point (complex, e.g. 0.25 or 0.1+0.2i)")
        ->required();
    counting->add_option("--roots", cfg.roots, "polynomial root method: companion | aberth")
        ->capture_default_str();

    auto* verify = add_common(
        app.add_subcommand("verify", "internal cross-validation checks with pass/fail lines"),
        false);
    verify->add_option("--suite", cfg.suite, "cov | kernel | all")->capture_default_str();
    verify->add_option("--quad-radial", cfg.quad_radial, "radial quadrature nodes")
        ->capture_default_str();
    verify->add_option("--quad-angular", cfg.quad_angular, "angular quadrature nodes")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!wtext.empty()) {
            cfg.w = dphi::parse_complex(wtext);
            cfg.has_w = true;
        }
        if (app.got_subcommand("norm")) {
            cfg.command = "norm";
            cfg.validate();
            return cmd_norm(cfg);
        }
        if (app.got_subcommand("diagnose")) {
            cfg.command = "diagnose";
            cfg.validate();
            return cmd_profile_like(cfg, /*standard_grid=*/true);
        }
        if (app.got_subcommand("profile")) {
            cfg.command = "profile";
            cfg.validate();
            return cmd_profile_like(cfg, /*standard_grid=*/false);
        }
        if (app.got_subcommand("hs")) {
            cfg.command = "hs";
            cfg.validate();
            return cmd_hs(cfg, hs_order->count() > 0);
        }
        if (app.got_subcommand("counting")) {
            cfg.command = "counting";
            cfg.validate();
            return cmd_counting(cfg);
        }
        cfg.command = "verify";
        cfg.validate();
        return cmd_verify(cfg);
    } catch (const dphi::invalid_spec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dphi::numeric_failure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
}
