#pragma once

#include "tetfield/vec3.hpp"

namespace tetfield {

/// Adaptive-quadrature control. Recursion stops on a level when the change
/// between one rule application and its four-way refinement drops below
/// max(abs_tol budget, rel_tol * |value|).
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-13;
    int max_subdivisions = 30;
};

struct MagneticScalarPotential {
    double value;  // A
};

/// Single-layer potential of a uniformly magnetized triangular face
/// (a, b, c oriented; surface charge is n . m with n = unit((a-c) x (b-c))),
/// integrated by adaptive triangle subdivision. Throws OracleError when the
/// subdivision budget is exhausted before convergence.
MagneticScalarPotential potential_quadrature(const Vec3& a, const Vec3& b, const Vec3& c,
                                             const Vec3& m, const Vec3& r,
                                             const QuadratureSpec& spec);

/// H of the same face by quadrature of the differentiated kernel
/// (r - r') / |r - r'|^3 * (n . m) / 4 pi. Independent of the closed forms.
Vec3 field_quadrature(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m, const Vec3& r,
                      const QuadratureSpec& spec);

/// Point-dipole H field: (3 (u . p) u - p) / (4 pi |r - c|^3), u the unit
/// vector from c to r. Throws ParameterError when r equals center.
Vec3 dipole_field(const Vec3& moment, const Vec3& center, const Vec3& r);

}  // namespace tetfield
