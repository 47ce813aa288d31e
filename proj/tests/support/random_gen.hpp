#pragma once

// Seed-stable random geometry for property tests: fixed engine plus explicit
// bit mapping so the same seed produces the same stream on every platform.

#include <cmath>
#include <cstdint>
#include <random>

#include "tetfield/assembly.hpp"
#include "tetfield/geometry.hpp"

namespace testsupport {

using tetfield::Tetrahedron;
using tetfield::Vec3;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0,1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Vec3 vec(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

// Non-degenerate triangle in [-1,1]^3: min altitude at least 5% of the
// longest edge.
struct Triangle {
    Vec3 a, b, c;
};

inline Triangle random_triangle(Rng& rng) {
    for (;;) {
        const Triangle t{rng.vec(-1, 1), rng.vec(-1, 1), rng.vec(-1, 1)};
        const double edge = tetfield::longest_edge(t.a, t.b, t.c);
        if (edge > 0.0 && cross(t.a - t.c, t.b - t.c).norm() > 0.05 * edge * edge) return t;
    }
}

// Non-degenerate tetrahedron in [-1,1]^3 (volume at least 1% of edge^3).
inline Tetrahedron random_tet(Rng& rng) {
    for (;;) {
        const Tetrahedron t{rng.vec(-1, 1), rng.vec(-1, 1), rng.vec(-1, 1), rng.vec(-1, 1)};
        const double edge = tetfield::longest_edge(t);
        if (edge > 0.0 && std::abs(tetfield::signed_volume(t)) > 0.01 * edge * edge * edge) {
            return t;
        }
    }
}

// Uniform barycentric interior point with every coordinate >= margin.
inline Vec3 random_interior_point(Rng& rng, const Tetrahedron& t, double margin = 0.02) {
    for (;;) {
        double w[4];
        double sum = 0.0;
        for (double& wi : w) {
            wi = -std::log(1.0 - rng.uniform());
            sum += wi;
        }
        bool ok = true;
        for (double& wi : w) {
            wi /= sum;
            if (wi < margin) ok = false;
        }
        if (ok) return t.v1 * w[0] + t.v2 * w[1] + t.v3 * w[2] + t.v4 * w[3];
    }
}

// Point strictly outside the tetrahedron, at least min_dist * longest_edge
// from its surface, within a box of 3x the edge length around the centroid.
inline Vec3 random_exterior_point(Rng& rng, const Tetrahedron& t, double min_dist = 0.05) {
    const double edge = tetfield::longest_edge(t);
    const Vec3 c = tetfield::centroid(t);
    for (;;) {
        const Vec3 p = c + rng.vec(-1.5, 1.5) * edge;
        if (tetfield::contains(t, p) == tetfield::Containment::outside &&
            tetfield::dist_to_faces(t, p) > min_dist * edge) {
            return p;
        }
    }
}

// Uniform random rotation from a normalized Gaussian quaternion.
inline tetfield::Mat3 random_rotation(Rng& rng) {
    double q[4];
    double n2 = 0.0;
    for (double& qi : q) {
        qi = rng.gaussian();
        n2 += qi * qi;
    }
    const double n = std::sqrt(n2);
    const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

inline double rel_diff(const Vec3& a, const Vec3& b) { return (a - b).norm() / b.norm(); }

inline tetfield::MagnetizedTetrahedron reference_fixture() {
    constexpr double mm = 1e-3;
    return {{{2.5 * mm, 3.0 * mm, 1.0 * mm},
             {2.0 * mm, 1.0 * mm, 4.0 * mm},
             {1.5 * mm, 4.0 * mm, 3.0 * mm},
             {4.5 * mm, 5.0 * mm, 2.0 * mm}},
            {0.32, 0.74, 0.89}};
}

}  // namespace testsupport
