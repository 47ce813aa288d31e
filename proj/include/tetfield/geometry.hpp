#pragma once

#include <array>
#include <string>

#include "tetfield/vec3.hpp"

namespace tetfield {

/// Triangle relabeled so that `b` holds the vertex with the largest interior
/// angle. The winding (oriented normal of the triple) matches the input.
struct OrderedTriangle {
    Vec3 a, b, c;
};

/// Rigid placement of an ordered triangle into its canonical frame:
/// local -> global is  r_g = p * r_l + d,  global -> local  r_l = p^T (r_g - d).
/// p is orthogonal with det +1; d is the foot of the altitude from b onto
/// line ac and becomes the local origin.
struct FacePose {
    Mat3 p;
    Vec3 d;

    Vec3 to_local(const Vec3& g) const { return p.transpose() * (g - d); }
    Vec3 to_global(const Vec3& l) const { return p * l + d; }
    Vec3 normal() const { return p.col(2); }
};

/// Canonical right-triangle split of an ordered triangle: local vertices are
/// a' = (l,0,0), b' = (0,h,0), c' = (-k,0,0), all of h, k, l strictly positive.
struct RightTriangleParams {
    double h, k, l;
};

struct Tetrahedron {
    Vec3 v1, v2, v3, v4;
};

enum class Containment { inside, outside, boundary };

std::string to_string(Containment c);

/// Relative tolerance used for all scale-invariant degeneracy decisions:
/// triangles are rejected when min altitude < tol * longest edge, tetrahedra
/// when |signed volume| < tol * (longest edge)^3, boundary classification uses
/// tol * longest edge on signed distances.
inline constexpr double kDegenerateRelTol = 1e-12;

/// Angle comparisons within this tolerance (radians) are ties; ties resolve
/// to the lowest original vertex index.
inline constexpr double kAngleTieTol = 1e-12;

double longest_edge(const Vec3& a, const Vec3& b, const Vec3& c);
double longest_edge(const Tetrahedron& t);
double signed_volume(const Tetrahedron& t);
Vec3 centroid(const Tetrahedron& t);

/// Throws GeometryError when the tetrahedron is degenerate (coplanar).
void validate_tetrahedron(const Tetrahedron& t);

/// Cyclic relabeling placing the largest-angle vertex in the middle slot.
/// Throws GeometryError on collinear input.
OrderedTriangle order_largest_angle(const Vec3& a, const Vec3& b, const Vec3& c);

/// Canonical frame of an ordered triangle: columns of p are
/// e_x = (a-c)/|a-c|, e_z = unit((a-c) x (b-c)), e_y = e_z x e_x; d is the
/// altitude foot of b on line ac. Throws GeometryError on degenerate input.
FacePose face_basis(const OrderedTriangle& t);

/// Reads h, k, l off the local coordinates of the posed triangle. Throws
/// GeometryError when any of them falls below the degeneracy tolerance.
RightTriangleParams right_triangle_params(const FacePose& pose, const OrderedTriangle& t);

struct FaceVertices {
    Vec3 a, b, c;
};

/// Swaps a and c if needed so that the face normal (a-c) x (b-c) points away
/// from `opposite`. Throws GeometryError when the four points are coplanar.
FaceVertices orient_outward(const FaceVertices& face, const Vec3& opposite);

/// Point classification against the closed tetrahedron via signed distances
/// to the four outward face planes.
Containment contains(const Tetrahedron& t, const Vec3& r);

/// Euclidean distance from a point to a (closed) triangle.
double dist_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Minimum distance from a point to the tetrahedron surface.
double dist_to_faces(const Tetrahedron& t, const Vec3& r);

struct Sphere {
    Vec3 center;
    double radius;
};

/// Circumscribed sphere of a non-degenerate tetrahedron.
Sphere circumsphere(const Tetrahedron& t);

/// The four faces paired with their opposite vertices, in the fixed cyclic
/// enumeration (v1 v2 v3 | v4), (v4 v1 v2 | v3), (v3 v4 v1 | v2), (v2 v3 v4 | v1).
struct FaceWithOpposite {
    FaceVertices face;
    Vec3 opposite;
};
std::array<FaceWithOpposite, 4> tet_faces(const Tetrahedron& t);

}  // namespace tetfield
