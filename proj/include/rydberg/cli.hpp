#pragma once

#include <optional>
#include <string>

#include "rydberg/packet.hpp"

namespace rydberg {

// Parsed run description for the command-line front end. All numeric fields
// are validated against the module preconditions before any computation.
struct RunConfig {
    std::string command;           // weights|energies|integrals|autocorr|spin|density|timescales|selftest
    int n = 50;
    double eccentricity = 0.4;
    int Z = 92;
    double a = 0.70710678118654752;
    double b = 0.70710678118654752;
    EnergyMode energy_mode = EnergyMode::kExact;
    bool approx = false;           // autocorr: use the circular-weight approximation
    double t_max = 3.0;            // in units of Tp (or a.u. with times_in_au)
    int samples = 1024;
    bool times_in_au = false;
    double time_point = 0.0;       // density: evaluation time
    double half_extent_factor = 1.6;
    int resolution = 512;
    std::string output_path;       // empty = stdout
    std::string format = "csv";    // csv|json|bin
    std::string density_field = "total";  // density bin output: total|large|small
};

// Executes one command; returns the process exit status (0 ok, 2 validation,
// 3 quadrature convergence failure, 1 I/O trouble). A one-line JSON manifest
// describing the run is written next to the output file (or to stderr when
// writing to stdout).
int run(const RunConfig& config);

std::string manifest_json(const RunConfig& config);

}  // namespace rydberg
