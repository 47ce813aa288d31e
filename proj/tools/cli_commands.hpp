#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tetfield/mesh.hpp"

namespace tetfield::cli {

// Documented exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;        // mesh/point/CSV file could not be read
inline constexpr int kExitValidation = 3;   // file read but content invalid
inline constexpr int kExitVerifyFailed = 4; // verify threshold breached or oracle failure

/// Parses "axis=x,through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200" (meters).
/// Throws ParameterError on malformed specs.
LineScanSpec parse_line_spec(const std::string& spec);

struct VerifyOptions {
    std::uint64_t seed = 20260808;
    double tol = 1e-6;
    int points_per_line = 200;     // reference fixture, 3 axis scans
    int random_fixtures = 2;
    int points_per_fixture = 16;
    double exclusion = 1e-6;       // m, skip points this close to a face
    double quad_rel = 1e-9;
};

struct VerifyReport {
    double max_rel_err = 0.0;
    int checked_points = 0;
    int skipped_points = 0;
    double seconds = 0.0;
    bool pass = false;
};

/// Analytic-vs-quadrature sweep over the built-in verification tetrahedron
/// (three axis scans) plus seeded random tetrahedra.
VerifyReport verify_run(const VerifyOptions& opt, std::ostream& log);

struct BenchOptions {
    long long n = 1'000'000;
    bool cache_pose = false;
    std::uint64_t seed = 7;
};

struct BenchResult {
    double us_full = 0.0;    // pose construction + tensor + field per point
    double us_cached = 0.0;  // tensor + field on a prepared tetrahedron
    bool cached = false;
    double checksum = 0.0;
};

BenchResult bench_run(const BenchOptions& opt);

/// The tetrahedron and magnetization used by `verify` and the bundled
/// example mesh (vertices in meters).
MagnetizedTetrahedron reference_tetrahedron();

/// Full CLI: eval | verify | bench. Returns one of the exit codes above.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tetfield::cli
