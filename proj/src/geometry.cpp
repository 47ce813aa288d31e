#include "tetfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tetfield/errors.hpp"

namespace tetfield {

std::string to_string(Containment c) {
    switch (c) {
        case Containment::inside: return "inside";
        case Containment::outside: return "outside";
        case Containment::boundary: return "boundary";
    }
    return "?";
}

double longest_edge(const Vec3& a, const Vec3& b, const Vec3& c) {
    return std::sqrt(std::max({(a - b).norm2(), (b - c).norm2(), (c - a).norm2()}));
}

double longest_edge(const Tetrahedron& t) {
    const double e2 = std::max({(t.v1 - t.v2).norm2(), (t.v1 - t.v3).norm2(), (t.v1 - t.v4).norm2(),
                                (t.v2 - t.v3).norm2(), (t.v2 - t.v4).norm2(), (t.v3 - t.v4).norm2()});
    return std::sqrt(e2);
}

double signed_volume(const Tetrahedron& t) {
    return dot(cross(t.v1 - t.v4, t.v2 - t.v4), t.v3 - t.v4) / 6.0;
}

Vec3 centroid(const Tetrahedron& t) { return (t.v1 + t.v2 + t.v3 + t.v4) / 4.0; }

void validate_tetrahedron(const Tetrahedron& t) {
    const double edge = longest_edge(t);
    if (!(edge > 0.0) || !t.v1.finite() || !t.v2.finite() || !t.v3.finite() || !t.v4.finite()) {
        throw GeometryError("tetrahedron has coincident or non-finite vertices");
    }
    if (std::abs(signed_volume(t)) < kDegenerateRelTol * edge * edge * edge) {
        throw GeometryError("tetrahedron is degenerate (coplanar vertices)");
    }
}

namespace {

double interior_angle(const Vec3& at, const Vec3& p, const Vec3& q) {
    const Vec3 u = p - at;
    const Vec3 v = q - at;
    return std::atan2(cross(u, v).norm(), dot(u, v));
}

}  // namespace

OrderedTriangle order_largest_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double edge = longest_edge(a, b, c);
    if (!(edge > 0.0)) throw GeometryError("triangle has coincident vertices");
    // min altitude = |(a-c) x (b-c)| / longest edge
    if (cross(a - c, b - c).norm() < kDegenerateRelTol * edge * edge) {
        throw GeometryError("triangle vertices are collinear");
    }

    const double ang[3] = {interior_angle(a, b, c), interior_angle(b, c, a), interior_angle(c, a, b)};
    int imax = 0;
    for (int i = 1; i < 3; ++i) {
        if (ang[i] > ang[imax] + kAngleTieTol) imax = i;
    }

    // Cyclic rotation keeps the oriented normal of the triple unchanged.
    switch (imax) {
        case 0: return {c, a, b};
        case 1: return {a, b, c};
        default: return {b, c, a};
    }
}

FacePose face_basis(const OrderedTriangle& t) {
    const Vec3 ac = t.a - t.c;
    const Vec3 bc = t.b - t.c;
    const double nac2 = ac.norm2();
    const double edge = longest_edge(t.a, t.b, t.c);
    const Vec3 n = cross(ac, bc);
    if (!(edge > 0.0) || n.norm() < kDegenerateRelTol * edge * edge) {
        throw GeometryError("triangle is degenerate, no face basis");
    }

    const Vec3 ex = ac / std::sqrt(nac2);
    const Vec3 ez = normalized(n);
    const Vec3 ey = cross(ez, ex);
    // Altitude foot of b on line ac, law-of-cosines form.
    const double s = (nac2 + bc.norm2() - (t.b - t.a).norm2()) / (2.0 * nac2);
    const Vec3 d = t.c + ac * s;
    return {Mat3::from_columns(ex, ey, ez), d};
}

RightTriangleParams right_triangle_params(const FacePose& pose, const OrderedTriangle& t) {
    const Vec3 al = pose.to_local(t.a);
    const Vec3 bl = pose.to_local(t.b);
    const Vec3 cl = pose.to_local(t.c);
    const double l = al.x;
    const double k = -cl.x;
    const double h = bl.y;
    const double tol = kDegenerateRelTol * longest_edge(t.a, t.b, t.c);
    if (!(h > tol) || !(k > tol) || !(l > tol)) {
        throw GeometryError("degenerate face: right-triangle parameter below tolerance");
    }
    return {h, k, l};
}

FaceVertices orient_outward(const FaceVertices& face, const Vec3& opposite) {
    const double triple = dot(cross(face.a - face.c, face.b - face.c), opposite - face.c);
    const double edge =
        std::max({longest_edge(face.a, face.b, face.c), (opposite - face.a).norm(),
                  (opposite - face.b).norm(), (opposite - face.c).norm()});
    if (std::abs(triple) < 6.0 * kDegenerateRelTol * edge * edge * edge) {
        throw GeometryError("cannot orient face: points are coplanar");
    }
    if (triple > 0.0) return {face.c, face.b, face.a};
    return face;
}

std::array<FaceWithOpposite, 4> tet_faces(const Tetrahedron& t) {
    return {{{{t.v1, t.v2, t.v3}, t.v4},
             {{t.v4, t.v1, t.v2}, t.v3},
             {{t.v3, t.v4, t.v1}, t.v2},
             {{t.v2, t.v3, t.v4}, t.v1}}};
}

Containment contains(const Tetrahedron& t, const Vec3& r) {
    validate_tetrahedron(t);
    const double tol = kDegenerateRelTol * longest_edge(t);
    double dmax = -std::numeric_limits<double>::infinity();
    for (const auto& fo : tet_faces(t)) {
        const FaceVertices f = orient_outward(fo.face, fo.opposite);
        const Vec3 n = normalized(cross(f.a - f.c, f.b - f.c));
        dmax = std::max(dmax, dot(n, r - f.c));
    }
    if (dmax > tol) return Containment::outside;
    if (dmax < -tol) return Containment::inside;
    return Containment::boundary;
}

namespace {

double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double t = std::clamp(dot(p - a, ab) / ab.norm2(), 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

}  // namespace

double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 n = cross(b - a, c - a);
    const double nn = n.norm2();
    if (nn > 0.0) {
        // Project onto the plane; inside test via barycentric signs.
        const Vec3 q = p - n * (dot(p - a, n) / nn);
        const double wa = dot(cross(b - q, c - q), n);
        const double wb = dot(cross(c - q, a - q), n);
        const double wc = dot(cross(a - q, b - q), n);
        if (wa >= 0.0 && wb >= 0.0 && wc >= 0.0) return (p - q).norm();
    }
    return std::min({dist_point_segment(p, a, b), dist_point_segment(p, b, c),
                     dist_point_segment(p, c, a)});
}

double dist_to_faces(const Tetrahedron& t, const Vec3& r) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& fo : tet_faces(t)) {
        d = std::min(d, dist_point_triangle(r, fo.face.a, fo.face.b, fo.face.c));
    }
    return d;
}

Sphere circumsphere(const Tetrahedron& t) {
    validate_tetrahedron(t);
    // 2 (v_i - v1) . o = |v_i|^2 - |v1|^2, i = 2..4
    const Vec3 r2 = (t.v2 - t.v1) * 2.0;
    const Vec3 r3 = (t.v3 - t.v1) * 2.0;
    const Vec3 r4 = (t.v4 - t.v1) * 2.0;
    const Mat3 a = {{{r2.x, r2.y, r2.z}, {r3.x, r3.y, r3.z}, {r4.x, r4.y, r4.z}}};
    const Vec3 b = {t.v2.norm2() - t.v1.norm2(), t.v3.norm2() - t.v1.norm2(),
                    t.v4.norm2() - t.v1.norm2()};
    const Vec3 o = solve(a, b);
    return {o, (o - t.v1).norm()};
}

}  // namespace tetfield
