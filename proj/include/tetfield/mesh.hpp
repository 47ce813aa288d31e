#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tetfield/assembly.hpp"

namespace tetfield {

/// Tetrahedral mesh with one uniform magnetization vector per element.
/// Vertices are stored in meters regardless of the unit declared in the
/// source file; unit_scale/unit_label record the declaration.
struct TetMesh {
    std::vector<Vec3> vertices;                // m
    std::vector<std::array<int, 4>> elements;  // 0-based vertex indices
    std::vector<Vec3> magnetization;           // A/m, one per element
    double unit_scale = 1.0;                   // declared unit -> meters
    std::string unit_label = "m";

    Tetrahedron element_tet(int e) const;
};

/// Parses and validates the self-describing mesh text format:
///
///   # comments and blank lines are allowed anywhere
///   unit mm                  (or: unit m | unit scale <factor>)
///   vertices <N>
///   <x y z>                  (N lines, declared unit)
///   elements <M>
///   <i1 i2 i3 i4>            (M lines, 0-based)
///   magnetization <M>
///   <mx my mz>               (M lines, A/m)
///
/// Throws MeshParseError for malformed input and MeshValidationError for
/// structurally valid but inconsistent content, both with file/line context.
TetMesh load_mesh(const std::string& path);
TetMesh parse_mesh(std::istream& in, const std::string& name);

struct LineScanSpec {
    int axis = 0;  // 0=x, 1=y, 2=z
    Vec3 through;  // point the scan passes through, m
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

struct GridSpec {
    Vec3 lo, hi;
    int nx = 0, ny = 0, nz = 0;
};

/// Evaluation point set plus a record of how it was produced.
struct EvalSet {
    enum class Provenance { points, line, grid };
    Provenance provenance = Provenance::points;
    std::vector<Vec3> points;  // m

    static EvalSet from_points(std::vector<Vec3> pts);
    static EvalSet line(const LineScanSpec& spec);
    static EvalSet grid(const GridSpec& spec);
};

/// Point file: one "x y z" triple per line (whitespace or comma separated),
/// coordinates in meters, '#' comments allowed.
EvalSet load_points(const std::string& path);

struct FieldRecord {
    Vec3 point;   // m
    Vec3 h;       // A/m
    Vec3 b;       // T
    double h_norm = 0.0;
    Containment containment = Containment::outside;
    int element = -1;  // owning element when not outside
};

/// Superposed field of all elements at every point, element index ascending.
/// Containment and the B-field material term come from the first element
/// that contains the point (boundary uses the inside branch).
std::vector<FieldRecord> evaluate(const TetMesh& mesh, const EvalSet& eval);

/// CSV with header x,y,z,Hx,Hy,Hz,Bx,By,Bz,Hnorm,containment,element and
/// 17-significant-digit decimals; numeric values round-trip bit-exactly.
void write_csv(std::ostream& out, const std::vector<FieldRecord>& records);
void write_csv_file(const std::string& path, const std::vector<FieldRecord>& records);
std::vector<FieldRecord> read_csv(std::istream& in, const std::string& name);

}  // namespace tetfield
