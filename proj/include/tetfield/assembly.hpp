#pragma once

#include <array>
#include <numbers>

#include "tetfield/geometry.hpp"
#include "tetfield/tensor_core.hpp"

namespace tetfield {

inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // T m / A, exact

struct MagnetizedTetrahedron {
    Tetrahedron tet;
    Vec3 m;  // A/m
};

/// Stray/demagnetization tensor contribution of one triangular face at r,
/// in the global frame: N = P N'(P^{-1}(r - D)) P^{-1}. The face normal is
/// set by the winding of (a, b, c); H_face(r) = N * M for any magnetization.
/// Throws GeometryError for degenerate faces.
Mat3 triangle_tensor(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& r);

/// H field (A/m) of one uniformly magnetized face at r.
Vec3 triangle_field(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m, const Vec3& r);

/// Per-tetrahedron geometry cache: the four outward faces with their poses
/// and right-triangle parameters, built once, evaluated at many points.
class PreparedTet {
  public:
    explicit PreparedTet(const Tetrahedron& t);

    Mat3 tensor(const Vec3& r) const;
    Vec3 field(const Vec3& r, const Vec3& m) const;

    const Tetrahedron& tet() const { return tet_; }

  private:
    struct Face {
        FacePose pose;
        RightTriangleParams params;
    };
    Tetrahedron tet_;
    std::array<Face, 4> faces_;
};

/// Full stray/demagnetization tensor of a tetrahedron at r: sum over the
/// four outward-oriented faces. trace is -1 inside the body and 0 outside.
Mat3 tet_tensor(const Tetrahedron& t, const Vec3& r);

/// H(r) = N(r) * m, valid inside and outside.
Vec3 tet_field(const MagnetizedTetrahedron& mt, const Vec3& r);

/// B(r) = mu0 (H + m) inside (and on the boundary, one-sided convention),
/// mu0 H outside. Tesla.
Vec3 b_field(const MagnetizedTetrahedron& mt, const Vec3& r);

}  // namespace tetfield
