#include "tetfield/mesh.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tetfield/errors.hpp"

namespace tetfield {

Tetrahedron TetMesh::element_tet(int e) const {
    const auto& el = elements[static_cast<size_t>(e)];
    return {vertices[static_cast<size_t>(el[0])], vertices[static_cast<size_t>(el[1])],
            vertices[static_cast<size_t>(el[2])], vertices[static_cast<size_t>(el[3])]};
}

namespace {

// Line-oriented reader that skips blanks and '#' comments and tracks the
// source line number for error messages.
class LineReader {
  public:
    LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw MeshParseError(name_ + ":" + std::to_string(lineno_) + ": " + what);
    }

    [[noreturn]] void fail_eof(const std::string& what) const {
        throw MeshParseError(name_ + ": unexpected end of file, " + what);
    }

    int lineno() const { return lineno_; }
    const std::string& name() const { return name_; }

  private:
    std::istream& in_;
    std::string name_;
    int lineno_ = 0;
};

double parse_double(const LineReader& r, const std::string& tok) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || errno == ERANGE) r.fail("bad number '" + tok + "'");
    return v;
}

long parse_nonneg_int(const LineReader& r, const std::string& tok, const char* what) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || errno == ERANGE || v < 0 || v > 0x7fffffff) {
        r.fail(std::string("bad ") + what + " '" + tok + "'");
    }
    return v;
}

Vec3 parse_vec3(const LineReader& r, const std::vector<std::string>& t) {
    if (t.size() != 3) r.fail("expected 3 values, got " + std::to_string(t.size()));
    const Vec3 v{parse_double(r, t[0]), parse_double(r, t[1]), parse_double(r, t[2])};
    if (!v.finite()) r.fail("non-finite value");
    return v;
}

[[noreturn]] void fail_validation(const std::string& name, const std::string& what) {
    throw MeshValidationError(name + ": " + what);
}

}  // namespace

TetMesh parse_mesh(std::istream& in, const std::string& name) {
    LineReader r(in, name);
    std::vector<std::string> t;
    TetMesh mesh;

    if (!r.next(t)) r.fail_eof("expected 'unit' declaration");
    if (t[0] != "unit") r.fail("expected 'unit m | mm | scale <factor>'");
    if (t.size() == 2 && t[1] == "m") {
        mesh.unit_scale = 1.0;
        mesh.unit_label = "m";
    } else if (t.size() == 2 && t[1] == "mm") {
        mesh.unit_scale = 1e-3;
        mesh.unit_label = "mm";
    } else if (t.size() == 3 && t[1] == "scale") {
        mesh.unit_scale = parse_double(r, t[2]);
        mesh.unit_label = "scale " + t[2];
        if (!(mesh.unit_scale > 0.0)) r.fail("unit scale must be positive");
    } else {
        r.fail("expected 'unit m | mm | scale <factor>'");
    }

    if (!r.next(t)) r.fail_eof("expected 'vertices <N>'");
    if (t.size() != 2 || t[0] != "vertices") r.fail("expected 'vertices <N>'");
    const long nv = parse_nonneg_int(r, t[1], "vertex count");
    mesh.vertices.reserve(static_cast<size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!r.next(t)) r.fail_eof("expected vertex " + std::to_string(i));
        mesh.vertices.push_back(parse_vec3(r, t) * mesh.unit_scale);
    }

    if (!r.next(t)) r.fail_eof("expected 'elements <M>'");
    if (t.size() != 2 || t[0] != "elements") r.fail("expected 'elements <M>'");
    const long ne = parse_nonneg_int(r, t[1], "element count");
    mesh.elements.reserve(static_cast<size_t>(ne));
    for (long i = 0; i < ne; ++i) {
        if (!r.next(t)) r.fail_eof("expected element " + std::to_string(i));
        if (t.size() != 4) r.fail("expected 4 vertex indices");
        std::array<int, 4> el{};
        for (int j = 0; j < 4; ++j) el[j] = static_cast<int>(parse_nonneg_int(r, t[j], "vertex index"));
        mesh.elements.push_back(el);
    }

    if (!r.next(t)) r.fail_eof("expected 'magnetization <M>'");
    if (t.size() != 2 || t[0] != "magnetization") r.fail("expected 'magnetization <M>'");
    const long nm = parse_nonneg_int(r, t[1], "magnetization count");
    for (long i = 0; i < nm; ++i) {
        if (!r.next(t)) r.fail_eof("expected magnetization " + std::to_string(i));
        mesh.magnetization.push_back(parse_vec3(r, t));
    }
    if (r.next(t)) r.fail("unexpected trailing content");

    // Eager validation with element-indexed messages.
    if (mesh.elements.empty()) fail_validation(name, "no elements");
    if (mesh.magnetization.size() != mesh.elements.size()) {
        fail_validation(name, "magnetization count " + std::to_string(mesh.magnetization.size()) +
                                  " does not match element count " +
                                  std::to_string(mesh.elements.size()));
    }
    const int nverts = static_cast<int>(mesh.vertices.size());
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        for (int j = 0; j < 4; ++j) {
            const int idx = mesh.elements[e][j];
            if (idx < 0 || idx >= nverts) {
                fail_validation(name, "element " + std::to_string(e) + ": vertex index " +
                                          std::to_string(idx) + " out of range [0," +
                                          std::to_string(nverts - 1) + "]");
            }
        }
        try {
            validate_tetrahedron(mesh.element_tet(static_cast<int>(e)));
        } catch (const GeometryError&) {
            fail_validation(name, "degenerate element " + std::to_string(e));
        }
    }
    return mesh;
}

TetMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshParseError(path + ": cannot open file");
    return parse_mesh(in, path);
}

EvalSet EvalSet::from_points(std::vector<Vec3> pts) {
    if (pts.empty()) throw ParameterError("evaluation set must contain at least one point");
    for (const Vec3& p : pts) {
        if (!p.finite()) throw ParameterError("evaluation point has non-finite coordinates");
    }
    EvalSet s;
    s.provenance = Provenance::points;
    s.points = std::move(pts);
    return s;
}

EvalSet EvalSet::line(const LineScanSpec& spec) {
    if (spec.axis < 0 || spec.axis > 2) throw ParameterError("line axis must be x, y or z");
    if (spec.n < 1) throw ParameterError("line scan needs at least one point");
    if (!spec.through.finite() || !std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
        throw ParameterError("line scan has non-finite coordinates");
    }
    EvalSet s;
    s.provenance = Provenance::line;
    s.points.reserve(static_cast<size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        const double t =
            (spec.n == 1) ? spec.lo
                          : spec.lo + (spec.hi - spec.lo) * (static_cast<double>(i) / (spec.n - 1));
        Vec3 p = spec.through;
        if (spec.axis == 0) p.x = t;
        if (spec.axis == 1) p.y = t;
        if (spec.axis == 2) p.z = t;
        s.points.push_back(p);
    }
    return s;
}

EvalSet EvalSet::grid(const GridSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1 || spec.nz < 1) {
        throw ParameterError("grid needs at least one point per axis");
    }
    if (!spec.lo.finite() || !spec.hi.finite()) throw ParameterError("grid bounds non-finite");
    EvalSet s;
    s.provenance = Provenance::grid;
    s.points.reserve(static_cast<size_t>(spec.nx) * spec.ny * spec.nz);
    const auto coord = [](double lo, double hi, int i, int n) {
        return (n == 1) ? lo : lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    };
    for (int iz = 0; iz < spec.nz; ++iz)
        for (int iy = 0; iy < spec.ny; ++iy)
            for (int ix = 0; ix < spec.nx; ++ix) {
                s.points.push_back({coord(spec.lo.x, spec.hi.x, ix, spec.nx),
                                    coord(spec.lo.y, spec.hi.y, iy, spec.ny),
                                    coord(spec.lo.z, spec.hi.z, iz, spec.nz)});
            }
    return s;
}

EvalSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshParseError(path + ": cannot open file");
    LineReader r(in, path);
    std::vector<std::string> t;
    std::vector<Vec3> pts;
    while (r.next(t)) {
        // allow comma separation
        std::vector<std::string> parts;
        for (const std::string& tok : t) {
            std::string cur;
            for (char ch : tok) {
                if (ch == ',') {
                    if (!cur.empty()) parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            if (!cur.empty()) parts.push_back(cur);
        }
        pts.push_back(parse_vec3(r, parts));
    }
    if (pts.empty()) throw MeshValidationError(path + ": no points");
    return EvalSet::from_points(std::move(pts));
}

std::vector<FieldRecord> evaluate(const TetMesh& mesh, const EvalSet& eval) {
    std::vector<PreparedTet> prepared;
    prepared.reserve(mesh.elements.size());
    for (size_t e = 0; e < mesh.elements.size(); ++e) {
        prepared.emplace_back(mesh.element_tet(static_cast<int>(e)));
    }

    std::vector<FieldRecord> out;
    out.reserve(eval.points.size());
    for (const Vec3& p : eval.points) {
        FieldRecord rec;
        rec.point = p;
        Vec3 h;
        for (size_t e = 0; e < prepared.size(); ++e) {
            h += prepared[e].field(p, mesh.magnetization[e]);
        }
        rec.h = h;
        rec.h_norm = h.norm();
        rec.containment = Containment::outside;
        rec.element = -1;
        for (size_t e = 0; e < prepared.size(); ++e) {
            const Containment c = contains(prepared[e].tet(), p);
            if (c != Containment::outside) {
                rec.containment = c;
                rec.element = static_cast<int>(e);
                break;
            }
        }
        Vec3 b = h;
        if (rec.element >= 0) b += mesh.magnetization[static_cast<size_t>(rec.element)];
        rec.b = b * kMu0;
        out.push_back(rec);
    }
    return out;
}

namespace {

constexpr char kCsvHeader[] = "x,y,z,Hx,Hy,Hz,Bx,By,Bz,Hnorm,containment,element";

void append_g17(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<FieldRecord>& records) {
    out << kCsvHeader << '\n';
    std::string row;
    for (const FieldRecord& r : records) {
        row.clear();
        for (double v : {r.point.x, r.point.y, r.point.z, r.h.x, r.h.y, r.h.z, r.b.x, r.b.y,
                         r.b.z, r.h_norm}) {
            append_g17(row, v);
            row += ',';
        }
        row += to_string(r.containment);
        row += ',';
        row += std::to_string(r.element);
        out << row << '\n';
    }
}

void write_csv_file(const std::string& path, const std::vector<FieldRecord>& records) {
    std::ofstream out(path);
    if (!out) throw MeshParseError(path + ": cannot open for writing");
    write_csv(out, records);
    out.flush();
    if (!out) throw MeshParseError(path + ": write failed");
}

std::vector<FieldRecord> read_csv(std::istream& in, const std::string& name) {
    std::string line;
    int lineno = 0;
    const auto fail = [&](const std::string& what) -> void {
        throw MeshParseError(name + ":" + std::to_string(lineno) + ": " + what);
    };

    if (!std::getline(in, line)) fail("empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) fail("unexpected CSV header");

    std::vector<FieldRecord> records;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                f.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        f.push_back(cur);
        if (f.size() != 12) fail("expected 12 fields, got " + std::to_string(f.size()));

        double v[10];
        for (int i = 0; i < 10; ++i) {
            errno = 0;
            char* end = nullptr;
            v[i] = std::strtod(f[static_cast<size_t>(i)].c_str(), &end);
            if (end != f[static_cast<size_t>(i)].c_str() + f[static_cast<size_t>(i)].size() ||
                errno == ERANGE) {
                fail("bad number '" + f[static_cast<size_t>(i)] + "'");
            }
        }
        FieldRecord rec;
        rec.point = {v[0], v[1], v[2]};
        rec.h = {v[3], v[4], v[5]};
        rec.b = {v[6], v[7], v[8]};
        rec.h_norm = v[9];
        if (f[10] == "inside") {
            rec.containment = Containment::inside;
        } else if (f[10] == "outside") {
            rec.containment = Containment::outside;
        } else if (f[10] == "boundary") {
            rec.containment = Containment::boundary;
        } else {
            fail("bad containment '" + f[10] + "'");
        }
        rec.element = std::atoi(f[11].c_str());
        records.push_back(rec);
    }
    return records;
}

}  // namespace tetfield
