#pragma once

#include "tetfield/geometry.hpp"

namespace tetfield {

/// Evaluation point in the canonical frame of a right-triangle pair
/// (face in the z=0 plane, vertices (l,0,0), (0,h,0), (-k,0,0)).
struct LocalPoint {
    double x, y, z;
};

/// Nonzero (third) column of the local partial tensor N'. The field of the
/// face in its own frame is H' = (n_xz, n_yz, n_zz) * M'_z.
struct PartialTensor {
    double n_xz, n_yz, n_zz;
};

/// |z| below kZGuardRel * max(h,k,l) is displaced to sign(z) * epsilon
/// (sign(0) = +1). All closed forms below are singular only in the z=0
/// plane, so this one guard covers the axis and edge-line singularities.
inline constexpr double kZGuardRel = 1e-9;

double guard_z(double z, double scale);

// Antiderivative kernels of the canonical right-triangle surface integrals.
// F/G enter the x-component, K/L the y-component, P/Q the z-component.
// atanh arguments are clamped to +-(1 - 1e-15) when rounding drives them
// to magnitude one (evaluation point collinear with an edge line).
double fn_F(double x, double y, double z, double yp, double h, double l);
double fn_G(double x, double y, double z, double yp);
double fn_K(double x, double y, double z, double xp, double h, double l);
double fn_L(double x, double y, double z, double xp);
double fn_P(double x, double y, double z, double xp, double h, double l);
double fn_Q(double x, double y, double z, double xp);

// Tensor components of the first-quadrant right triangle (l-triangle,
// vertices (0,0), (l,0), (0,h)). Throw ParameterError for h or l <= 0.
double n_xz_l(const LocalPoint& p, double h, double l);
double n_yz_l(const LocalPoint& p, double h, double l);
double n_zz_l(const LocalPoint& p, double h, double l);

// Second-quadrant mirror triangle (k-triangle, vertices (0,0), (-k,0), (0,h)).
// Implemented by reflecting the evaluation point, x -> -x, onto an l-triangle
// with parameter k; the x component changes sign, y and z are preserved.
double n_xz_k(const LocalPoint& p, double h, double k);
double n_yz_k(const LocalPoint& p, double h, double k);
double n_zz_k(const LocalPoint& p, double h, double k);

/// Direct closed-form route to n_xz_k (G and F differences written out for
/// the second quadrant). Cross-check for the reflection route; the two must
/// agree to machine precision.
double n_xz_k_explicit(const LocalPoint& p, double h, double k);

/// Summed component pair for the full canonical triangle
/// ((l,0,0), (0,h,0), (-k,0,0)): n_ij = n_ij_k + n_ij_l, with the z guard
/// applied once to the input point before evaluation.
PartialTensor local_tensor(const LocalPoint& p, const RightTriangleParams& params);

}  // namespace tetfield
