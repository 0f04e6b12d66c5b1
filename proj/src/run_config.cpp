#include "dphi/run_config.hpp"

#include "json.hpp"

#include "dphi/errors.hpp"
#include "dphi/self_map.hpp"
#include "dphi/space.hpp"

namespace dphi {

void RunConfig::validate() const {
    SpaceParams check(alpha); // rejects alpha outside (0, 1) with the range message
    (void)check;
    if (order < 1) throw invalid_spec("truncation order must be >= 1");
    if (quad_radial < 2 || quad_angular < 4)
        throw invalid_spec("quadrature needs >= 2 radial and >= 4 angular nodes");
    if (shells < 1 || points < 1) throw invalid_spec("profile grid must be nonempty");
    if (format != "json" && format != "csv" && format != "human")
        throw invalid_spec("output format must be json, csv, or human; got \"" + format + "\"");
    if (roots != "companion" && roots != "aberth")
        throw invalid_spec("root method must be companion or aberth; got \"" + roots + "\"");
    if (!(tol > 0.0)) throw invalid_spec("tolerance must be > 0");
    if (suite != "cov" && suite != "kernel" && suite != "all")
        throw invalid_spec("verify suite must be cov, kernel, or all; got \"" + suite + "\"");
}

std::string RunConfig::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["command"] = command;
    j["map"] = map_spec;
    j["alpha"] = alpha;
    j["order"] = order;
    j["quad_radial"] = quad_radial;
    j["quad_angular"] = quad_angular;
    j["shells"] = shells;
    j["points"] = points;
    if (has_w) j["w"] = format_complex(w);
    j["format"] = format;
    j["out"] = out;
    j["roots"] = roots;
    j["tol"] = tol;
    j["suite"] = suite;
    return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec(std::string("bad config JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        if (j.value("schema", 1) != 1) throw invalid_spec("unsupported config schema");
        cfg.command = j.value("command", cfg.command);
        cfg.map_spec = j.value("map", cfg.map_spec);
        cfg.alpha = j.value("alpha", cfg.alpha);
        cfg.order = j.value("order", cfg.order);
        cfg.quad_radial = j.value("quad_radial", cfg.quad_radial);
        cfg.quad_angular = j.value("quad_angular", cfg.quad_angular);
        cfg.shells = j.value("shells", cfg.shells);
        cfg.points = j.value("points", cfg.points);
        if (j.contains("w")) {
            cfg.has_w = true;
            cfg.w = parse_complex(j["w"].get<std::string>());
        }
        cfg.format = j.value("format", cfg.format);
        cfg.out = j.value("out", cfg.out);
        cfg.roots = j.value("roots", cfg.roots);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.suite = j.value("suite", cfg.suite);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec(std::string("bad config JSON: ") + e.what());
    }
    return cfg;
}

} // namespace dphi
