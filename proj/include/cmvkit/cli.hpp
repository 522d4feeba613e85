#pragma once

// Command-line surface.  run_cli parses argv-style tokens into a RunConfig
// and delegates to run; run is the library entry point the binary is a thin
// adapter over, so its stream output is byte-identical to the CLI's.
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical failure
// (a tolerance breach or a failed verification, with the identity named on
// the error stream).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmvkit/common.hpp"

namespace cmvkit {

struct RunConfig {
    std::string command;  // measure | opuc | cmv | gz | weyl
    std::string action;   // subcommand within the group

    // Input source: exactly one of schedule file, builtin measure name, or
    // random schedule generation.
    std::string schedule_path;
    std::string measure_name;
    int random_count = 0;
    std::uint64_t seed = 12345;
    std::optional<double> zeta_const_angle;  // radians; constant phase for every zeta_n

    int n = -1;  // size/order parameter; -1 = per-action default
    int steps = 0;
    int stride = 1;
    int k_index = 0;
    std::optional<int> lo;
    std::optional<int> hi;
    std::optional<int> impulse;
    int nodes = 0;

    cplx z{0.0, 0.0};
    cplx r{0.0, 0.0};
    bool have_z = false;
    bool have_r = false;

    bool rotated = false;
    bool alternate = false;
    bool second_kind = false;
    std::string boundary;  // empty = per-action default
    std::string seed_family = "f+";
    std::string direction = "rightward";
    std::optional<cplx> seed_f;
    std::optional<cplx> seed_g;
    std::optional<int> seed_index;
    double perturb = 0.0;

    std::string format;  // json | csv; empty = per-action default
    std::string out_path;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parse tokens (program name excluded) and run.  --out FILE redirects the
// output stream to the file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "RE,IM" (or bare "RE") -> complex; throws std::invalid_argument on junk.
cplx parse_complex(const std::string& text);

// "Xpi" -> X * pi radians, e.g. "0.25pi".
double parse_zeta_angle(const std::string& text);

}  // namespace cmvkit
