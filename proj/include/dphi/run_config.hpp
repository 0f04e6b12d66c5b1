#pragma once

// Declarative description of one CLI run. Kept in the library so the
// round-trip (flags -> config -> JSON -> config) is testable without
// spawning the binary.

#include <complex>
#include <string>

namespace dphi {

struct RunConfig {
    std::string command;       // norm | diagnose | profile | hs | counting | verify
    std::string map_spec;      // maps-catalog grammar
    double alpha = 0.5;
    int order = 200;           // matrix/series truncation order
    int quad_radial = 256;
    int quad_angular = 512;
    int shells = 14;
    int points = 256;          // per shell
    bool has_w = false;
    std::complex<double> w{};  // evaluation point for counting
    std::string format = "human"; // json | csv | human
    std::string out;           // output file; empty writes to stdout
    std::string roots = "companion"; // companion | aberth
    double tol = 1e-13;        // power-iteration stop
    std::string suite = "all"; // verify: cov | kernel | all

    // Throws invalid_spec on out-of-range fields (alpha outside (0,1),
    // nonpositive resolutions, unknown format/root method).
    void validate() const;

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);
};

} // namespace dphi
