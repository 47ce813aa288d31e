#include "cli_commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tetfield/errors.hpp"
#include "tetfield/oracle.hpp"

namespace tetfield::cli {

namespace {

// Portable uniform doubles: fixed engine plus explicit bit mapping, so a
// seed reproduces the same stream on every platform/stdlib.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

  private:
    std::mt19937_64 eng_;
};

Tetrahedron random_tet(Rng& rng) {
    for (;;) {
        const Tetrahedron t{rng.vec(-1, 1), rng.vec(-1, 1), rng.vec(-1, 1), rng.vec(-1, 1)};
        const double edge = longest_edge(t);
        if (edge > 0.0 && std::abs(signed_volume(t)) > 0.01 * edge * edge * edge) return t;
    }
}

Vec3 quadrature_tet_field(const MagnetizedTetrahedron& mt, const Vec3& r,
                          const QuadratureSpec& spec) {
    Vec3 h;
    for (const auto& fo : tet_faces(mt.tet)) {
        const FaceVertices f = orient_outward(fo.face, fo.opposite);
        h += field_quadrature(f.a, f.b, f.c, mt.m, r, spec);
    }
    return h;
}

struct FixtureStats {
    double max_rel = 0.0;
    int checked = 0;
    int skipped = 0;
};

void compare_points(const MagnetizedTetrahedron& mt, const PreparedTet& prep,
                    const std::vector<Vec3>& points, double exclusion,
                    const QuadratureSpec& spec, FixtureStats& stats) {
    for (const Vec3& p : points) {
        if (dist_to_faces(mt.tet, p) < exclusion) {
            ++stats.skipped;
            continue;
        }
        const Vec3 ha = prep.field(p, mt.m);
        const Vec3 hq = quadrature_tet_field(mt, p, spec);
        const double rel = (ha - hq).norm() / hq.norm();
        stats.max_rel = std::max(stats.max_rel, rel);
        ++stats.checked;
    }
}

}  // namespace

MagnetizedTetrahedron reference_tetrahedron() {
    constexpr double mm = 1e-3;
    return {{{2.5 * mm, 3.0 * mm, 1.0 * mm},
             {2.0 * mm, 1.0 * mm, 4.0 * mm},
             {1.5 * mm, 4.0 * mm, 3.0 * mm},
             {4.5 * mm, 5.0 * mm, 2.0 * mm}},
            {0.32, 0.74, 0.89}};
}

LineScanSpec parse_line_spec(const std::string& spec) {
    LineScanSpec out;
    bool have_axis = false, have_through = false, have_range = false, have_n = false;

    std::istringstream ss(spec);
    std::string item;
    const auto parse_reals = [&](const std::string& v, int n, double* dst) {
        std::istringstream vs(v);
        std::string num;
        int i = 0;
        while (std::getline(vs, num, ':')) {
            if (i >= n) throw ParameterError("too many values in '" + v + "'");
            char* end = nullptr;
            dst[i] = std::strtod(num.c_str(), &end);
            if (end != num.c_str() + num.size() || !std::isfinite(dst[i])) {
                throw ParameterError("bad number '" + num + "' in line spec");
            }
            ++i;
        }
        if (i != n) throw ParameterError("expected " + std::to_string(n) + " values in '" + v + "'");
    };

    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParameterError("line spec items must be key=value");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (key == "axis") {
            if (val == "x") out.axis = 0;
            else if (val == "y") out.axis = 1;
            else if (val == "z") out.axis = 2;
            else throw ParameterError("axis must be x, y or z");
            have_axis = true;
        } else if (key == "through") {
            double v[3];
            parse_reals(val, 3, v);
            out.through = {v[0], v[1], v[2]};
            have_through = true;
        } else if (key == "range") {
            double v[2];
            parse_reals(val, 2, v);
            out.lo = v[0];
            out.hi = v[1];
            have_range = true;
        } else if (key == "n") {
            char* end = nullptr;
            const long n = std::strtol(val.c_str(), &end, 10);
            if (end != val.c_str() + val.size() || n < 1) {
                throw ParameterError("n must be a positive integer");
            }
            out.n = static_cast<int>(n);
            have_n = true;
        } else {
            throw ParameterError("unknown line spec key '" + key + "'");
        }
    }
    if (!have_axis || !have_through || !have_range || !have_n) {
        throw ParameterError("line spec needs axis=, through=, range= and n=");
    }
    return out;
}

VerifyReport verify_run(const VerifyOptions& opt, std::ostream& log) {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureSpec spec{opt.quad_rel, 1e-15, 32};
    VerifyReport report;

    // Reference fixture: three Cartesian scans through (3, 3, 2.5) mm.
    {
        const MagnetizedTetrahedron mt = reference_tetrahedron();
        const PreparedTet prep(mt.tet);
        FixtureStats stats;
        const Vec3 through{3e-3, 3e-3, 2.5e-3};
        for (int axis = 0; axis < 3; ++axis) {
            const EvalSet scan = EvalSet::line({axis, through, 0.0, 6e-3, opt.points_per_line});
            compare_points(mt, prep, scan.points, opt.exclusion, spec, stats);
        }
        log << "fixture reference-tet: " << stats.checked << " points, " << stats.skipped
            << " skipped near faces, max rel err " << stats.max_rel << "\n";
        report.max_rel_err = std::max(report.max_rel_err, stats.max_rel);
        report.checked_points += stats.checked;
        report.skipped_points += stats.skipped;
    }

    // Seeded random fixtures at unit scale.
    Rng rng(opt.seed);
    for (int fx = 0; fx < opt.random_fixtures; ++fx) {
        const MagnetizedTetrahedron mt{random_tet(rng), rng.vec(-1, 1)};
        const PreparedTet prep(mt.tet);
        const double edge = longest_edge(mt.tet);
        const Vec3 c = centroid(mt.tet);
        std::vector<Vec3> pts;
        while (static_cast<int>(pts.size()) < opt.points_per_fixture) {
            const Vec3 p = c + rng.vec(-1.5, 1.5) * edge;
            if (dist_to_faces(mt.tet, p) > 1e-3 * edge) pts.push_back(p);
        }
        FixtureStats stats;
        compare_points(mt, prep, pts, 0.0, spec, stats);
        log << "fixture random-" << fx + 1 << ": " << stats.checked
            << " points, max rel err " << stats.max_rel << "\n";
        report.max_rel_err = std::max(report.max_rel_err, stats.max_rel);
        report.checked_points += stats.checked;
    }

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.pass = report.max_rel_err <= opt.tol;
    log << "verify: max rel err " << report.max_rel_err << " over " << report.checked_points
        << " points, tol " << opt.tol << " -> " << (report.pass ? "PASS" : "FAIL") << "\n";
    return report;
}

BenchResult bench_run(const BenchOptions& opt) {
    const MagnetizedTetrahedron mt = reference_tetrahedron();
    const double edge = longest_edge(mt.tet);
    const Vec3 c = centroid(mt.tet);

    Rng rng(opt.seed);
    constexpr int kNumPoints = 1 << 16;
    std::vector<Vec3> pts(kNumPoints);
    for (Vec3& p : pts) p = c + rng.vec(-1.0, 1.0) * edge;

    BenchResult result;
    result.cached = opt.cache_pose;
    double checksum = 0.0;

    {
        const auto t0 = std::chrono::steady_clock::now();
        for (long long i = 0; i < opt.n; ++i) {
            const Vec3& p = pts[static_cast<size_t>(i) & (kNumPoints - 1)];
            const Mat3 n = tet_tensor(mt.tet, p);
            const Vec3 h = n * mt.m;
            checksum += h.x + h.z + n.m[1][1];
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.us_full = dt / static_cast<double>(opt.n) * 1e6;
    }

    if (opt.cache_pose) {
        const PreparedTet prep(mt.tet);
        const auto t0 = std::chrono::steady_clock::now();
        for (long long i = 0; i < opt.n; ++i) {
            const Vec3& p = pts[static_cast<size_t>(i) & (kNumPoints - 1)];
            const Mat3 n = prep.tensor(p);
            const Vec3 h = n * mt.m;
            checksum += h.x + h.z + n.m[1][1];
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.us_cached = dt / static_cast<double>(opt.n) * 1e6;
    }

    result.checksum = checksum;
    return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytical stray/demagnetization field of magnetized triangular faces and "
                 "tetrahedral meshes"};
    app.name("tetfield");
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate H and B of a mesh over a point set");
    std::string mesh_path, points_path, line_spec, out_path;
    eval_cmd->add_option("--mesh", mesh_path, "mesh file")->required();
    auto* opt_points = eval_cmd->add_option("--points", points_path, "point file (x y z per line, meters)");
    auto* opt_line = eval_cmd->add_option(
        "--line", line_spec, "axis-aligned scan, e.g. axis=x,through=3e-3:3e-3:2.5e-3,range=0:6e-3,n=200");
    opt_points->excludes(opt_line);
    eval_cmd->add_option("--out", out_path, "output CSV")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Analytic vs quadrature-oracle comparison");
    VerifyOptions vopt;
    verify_cmd->add_option("--seed", vopt.seed, "random fixture seed");
    verify_cmd->add_option("--tol", vopt.tol, "max allowed relative error");
    verify_cmd->add_option("--points-per-line", vopt.points_per_line, "points per reference scan");
    verify_cmd->add_option("--random-fixtures", vopt.random_fixtures, "number of random tetrahedra");
    verify_cmd->add_option("--points-per-fixture", vopt.points_per_fixture,
                           "points per random tetrahedron");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time tensor+field evaluations");
    BenchOptions bopt;
    bench_cmd->add_option("--n", bopt.n, "number of evaluations");
    bench_cmd->add_flag("--cache-pose", bopt.cache_pose,
                        "also time evaluations on a prepared (pose-cached) tetrahedron");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            if (points_path.empty() == line_spec.empty()) {
                err << "error: exactly one of --points or --line is required\n";
                return kExitUsage;
            }
            const TetMesh mesh = load_mesh(mesh_path);
            const EvalSet eval = points_path.empty()
                                     ? EvalSet::line(parse_line_spec(line_spec))
                                     : load_points(points_path);
            const std::vector<FieldRecord> records = evaluate(mesh, eval);
            write_csv_file(out_path, records);
            out << "wrote " << records.size() << " records to " << out_path << "\n";
            return kExitOk;
        }
        if (verify_cmd->parsed()) {
            const VerifyReport report = verify_run(vopt, out);
            out << "elapsed " << report.seconds << " s\n";
            return report.pass ? kExitOk : kExitVerifyFailed;
        }
        if (bench_cmd->parsed()) {
            const BenchResult r = bench_run(bopt);
            out << "bench: " << bopt.n
                << " evaluations, full path (pose + tensor + field): " << r.us_full
                << " us per tetrahedron-point\n";
            if (r.cached) {
                out << "bench: " << bopt.n
                    << " evaluations, cached pose (tensor + field): " << r.us_cached
                    << " us per tetrahedron-point\n";
            }
            out << "checksum " << r.checksum << "\n";
            return kExitOk;
        }
    } catch (const MeshParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MeshValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const OracleError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace tetfield::cli
