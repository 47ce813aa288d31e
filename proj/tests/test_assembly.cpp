#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>

#include "support/random_gen.hpp"
#include "tetfield/assembly.hpp"
#include "tetfield/errors.hpp"
#include "tetfield/oracle.hpp"

using namespace tetfield;
using testsupport::Rng;

namespace {

Vec3 quadrature_tet_field(const MagnetizedTetrahedron& mt, const Vec3& r,
                          const QuadratureSpec& spec) {
    Vec3 h;
    for (const auto& fo : tet_faces(mt.tet)) {
        const FaceVertices f = orient_outward(fo.face, fo.opposite);
        h += field_quadrature(f.a, f.b, f.c, mt.m, r, spec);
    }
    return h;
}

std::array<Tetrahedron, 4> centroid_split(const Tetrahedron& t) {
    const Vec3 c = centroid(t);
    std::array<Tetrahedron, 4> out;
    const auto faces = tet_faces(t);
    for (int i = 0; i < 4; ++i) {
        out[static_cast<size_t>(i)] = {faces[static_cast<size_t>(i)].face.a,
                                       faces[static_cast<size_t>(i)].face.b,
                                       faces[static_cast<size_t>(i)].face.c, c};
    }
    return out;
}

}  // namespace

TEST_CASE("triangle_tensor of a canonical face keeps only the third column") {
    const Vec3 a{1, 0, 0}, b{0, 1, 0}, c{-1, 0, 0};
    const Vec3 r{0.3, 0.4, 0.7};
    const Mat3 n = triangle_tensor(a, b, c, r);
    const PartialTensor pt = local_tensor({r.x, r.y, r.z}, {1, 1, 1});
    for (int i = 0; i < 3; ++i) {
        CHECK(n(i, 0) == 0.0);
        CHECK(n(i, 1) == 0.0);
    }
    CHECK(n(0, 2) == doctest::Approx(pt.n_xz).epsilon(1e-14));
    CHECK(n(1, 2) == doctest::Approx(pt.n_yz).epsilon(1e-14));
    CHECK(n(2, 2) == doctest::Approx(pt.n_zz).epsilon(1e-14));
}

TEST_CASE("in-plane magnetization contributes no field") {
    Rng rng(41);
    for (int i = 0; i < 100; ++i) {
        const auto tri = testsupport::random_triangle(rng);
        // random vector in the face plane
        const Vec3 m = (tri.a - tri.c) * rng.uniform(-1, 1) + (tri.b - tri.c) * rng.uniform(-1, 1);
        const Vec3 r = rng.vec(-2, 2);
        const Vec3 h = triangle_field(tri.a, tri.b, tri.c, m, r);
        CHECK(h.norm() <= 1e-13 * m.norm());
    }
}

TEST_CASE("triangle_tensor matches three per-axis oracle runs") {
    const QuadratureSpec spec{1e-9, 1e-14, 32};
    Rng rng(42);
    const Vec3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 5; ++i) {
        const auto tri = testsupport::random_triangle(rng);
        Vec3 r = rng.vec(-2, 2);
        while (dist_point_triangle(r, tri.a, tri.b, tri.c) <
               1e-2 * longest_edge(tri.a, tri.b, tri.c)) {
            r = rng.vec(-2, 2);
        }
        const Mat3 n = triangle_tensor(tri.a, tri.b, tri.c, r);
        for (int j = 0; j < 3; ++j) {
            const Vec3 hq = field_quadrature(tri.a, tri.b, tri.c, basis[j], r, spec);
            const Vec3 hcol = n.col(j);
            CHECK((hcol - hq).norm() <= std::max(1e-8, 1e-6 * hq.norm()));
        }
    }
}

TEST_CASE("triangle_field is linear in the magnetization") {
    const Vec3 a{0.3, -0.2, 0.1}, b{1.1, 0.4, -0.5}, c{-0.6, 0.9, 0.8};
    const Vec3 r{0.5, 0.5, 1.2};
    CHECK(triangle_field(a, b, c, {0, 0, 0}, r).norm() == 0.0);
    const Vec3 m1{0.2, -0.7, 0.4}, m2{-1.1, 0.3, 0.9};
    const Vec3 sum = triangle_field(a, b, c, m1 + m2, r);
    const Vec3 parts = triangle_field(a, b, c, m1, r) + triangle_field(a, b, c, m2, r);
    CHECK((sum - parts).norm() <= 1e-13 * sum.norm());
}

TEST_CASE("canonical unit triangle field matches the frozen oracle value") {
    // frozen from a rel_tol 1e-12 quadrature run
    const Vec3 frozen{0.023644194687695935, -0.030131770875825289, 0.14229488094819115};
    const Vec3 h = triangle_field({1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, 0, 1}, {0.2, 0.2, 0.5});
    CHECK((h - frozen).norm() <= 1e-8 * frozen.norm());
}

TEST_CASE("tet_tensor at the centroid of a regular tetrahedron is -I/3") {
    const Tetrahedron reg{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    const Mat3 n = tet_tensor(reg, centroid(reg));
    CHECK((n - Mat3::identity() * (-1.0 / 3.0)).max_abs() <= 1e-12);
}

TEST_CASE("tet_tensor trace is -1 inside and 0 outside") {
    Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        const Tetrahedron t = testsupport::random_tet(rng);
        const Mat3 ni = tet_tensor(t, testsupport::random_interior_point(rng, t));
        CHECK(ni.trace() == doctest::Approx(-1.0).epsilon(1e-9));
        const Mat3 no = tet_tensor(t, testsupport::random_exterior_point(rng, t));
        CHECK(std::abs(no.trace()) <= 1e-9);
    }
}

TEST_CASE("tet_tensor is symmetric") {
    Rng rng(44);
    for (int i = 0; i < 1000; ++i) {
        const Tetrahedron t = testsupport::random_tet(rng);
        Vec3 p = centroid(t) + rng.vec(-1.5, 1.5) * longest_edge(t);
        while (dist_to_faces(t, p) < 1e-6 * longest_edge(t)) {
            p = centroid(t) + rng.vec(-1.5, 1.5) * longest_edge(t);
        }
        const Mat3 n = tet_tensor(t, p);
        CHECK((n - n.transpose()).max_abs() <= 1e-10);
    }
}

TEST_CASE("tet_field is covariant under rigid motion") {
    Rng rng(45);
    for (int i = 0; i < 300; ++i) {
        const Tetrahedron t = testsupport::random_tet(rng);
        const Vec3 m = rng.vec(-1, 1);
        const Vec3 r = centroid(t) + rng.vec(-1.5, 1.5) * longest_edge(t);
        const Mat3 rot = testsupport::random_rotation(rng);
        const Vec3 shift = rng.vec(-5, 5);
        const Tetrahedron tr{rot * t.v1 + shift, rot * t.v2 + shift, rot * t.v3 + shift,
                             rot * t.v4 + shift};
        const Vec3 h0 = tet_field({t, m}, r);
        const Vec3 h1 = tet_field({tr, rot * m}, rot * r + shift);
        CHECK((h1 - rot * h0).norm() <= 1e-10 * std::max(1.0, h0.norm()));
    }
}

TEST_CASE("reference tetrahedron scan points match the quadrature oracle") {
    const auto mt = testsupport::reference_fixture();
    const QuadratureSpec spec{1e-9, 1e-15, 32};
    const Vec3 through{3e-3, 3e-3, 2.5e-3};
    for (int axis = 0; axis < 3; ++axis) {
        for (const double t : {0.8e-3, 2.7e-3, 3.4e-3, 5.2e-3}) {
            Vec3 r = through;
            if (axis == 0) r.x = t;
            if (axis == 1) r.y = t;
            if (axis == 2) r.z = t;
            if (dist_to_faces(mt.tet, r) < 1e-6) continue;
            const Vec3 ha = tet_field(mt, r);
            const Vec3 hq = quadrature_tet_field(mt, r, spec);
            CHECK((ha - hq).norm() / hq.norm() <= 1e-6);
        }
    }
}

TEST_CASE("centroid subdivision leaves exterior fields unchanged") {
    const auto mt = testsupport::reference_fixture();
    const auto parts = centroid_split(mt.tet);
    Rng rng(46);
    for (int i = 0; i < 25; ++i) {
        const Vec3 r = testsupport::random_exterior_point(rng, mt.tet);
        const Vec3 h0 = tet_field(mt, r);
        Vec3 hs;
        for (const Tetrahedron& part : parts) hs += tet_field({part, mt.m}, r);
        CHECK((hs - h0).norm() <= 1e-9 * h0.norm());
    }
}

TEST_CASE("tet_field is independent of vertex labeling") {
    Rng rng(47);
    const Tetrahedron t = testsupport::random_tet(rng);
    const Vec3 m = rng.vec(-1, 1);
    const Vec3 r = testsupport::random_exterior_point(rng, t, 0.01);
    const Vec3 h0 = tet_field({t, m}, r);
    const Vec3 v[4] = {t.v1, t.v2, t.v3, t.v4};
    const int perms[5][4] = {{1, 0, 2, 3}, {3, 2, 1, 0}, {2, 0, 3, 1}, {0, 3, 1, 2}, {1, 2, 3, 0}};
    for (const auto& p : perms) {
        const Vec3 h = tet_field({{v[p[0]], v[p[1]], v[p[2]], v[p[3]]}, m}, r);
        CHECK((h - h0).norm() <= 1e-12 * h0.norm());
    }
}

TEST_CASE("b_field uses the material term inside and is continuous across faces") {
    const auto mt = testsupport::reference_fixture();
    const Vec3 inside{3e-3, 3e-3, 2.5e-3};
    CHECK((b_field(mt, inside) - (tet_field(mt, inside) + mt.m) * kMu0).norm() == 0.0);
    const Vec3 outside{10e-3, 0, 0};
    CHECK((b_field(mt, outside) - tet_field(mt, outside) * kMu0).norm() == 0.0);
    CHECK(b_field({mt.tet, {0, 0, 0}}, inside).norm() == 0.0);
    // boundary points take the inside branch
    CHECK((b_field(mt, mt.tet.v1) - (tet_field(mt, mt.tet.v1) + mt.m) * kMu0).norm() == 0.0);

    // normal component of B is continuous across each face interior
    const double edge = longest_edge(mt.tet);
    const double delta = 1e-7 * edge;
    for (const auto& fo : tet_faces(mt.tet)) {
        const FaceVertices f = orient_outward(fo.face, fo.opposite);
        const Vec3 n = normalized(cross(f.a - f.c, f.b - f.c));
        const Vec3 fc = (f.a + f.b + f.c) / 3.0;
        const double jump = dot(n, b_field(mt, fc + n * delta) - b_field(mt, fc - n * delta));
        CHECK(std::abs(jump) <= 1e-6 * kMu0 * mt.m.norm());
    }
}

TEST_CASE("b_field falls onto the dipole form far away") {
    const auto mt = testsupport::reference_fixture();
    const Sphere s = circumsphere(mt.tet);
    const Vec3 center = centroid(mt.tet);
    const Vec3 p = mt.m * std::abs(signed_volume(mt.tet));
    Rng rng(48);
    for (int i = 0; i < 30; ++i) {
        Vec3 dir = rng.vec(-1, 1);
        while (dir.norm() < 0.1) dir = rng.vec(-1, 1);
        const Vec3 r = center + normalized(dir) * (20.0 * s.radius);
        const Vec3 b = b_field(mt, r);
        const Vec3 bd = dipole_field(p, center, r) * kMu0;
        CHECK((b - bd).norm() <= 0.01 * bd.norm());
    }
}

TEST_CASE("exterior field is curl- and divergence-free") {
    const auto mt = testsupport::reference_fixture();
    const double edge = longest_edge(mt.tet);
    const double step = 1e-5 * edge;
    Rng rng(49);
    for (int i = 0; i < 100; ++i) {
        const Vec3 r = testsupport::random_exterior_point(rng, mt.tet);
        double jac[3][3];
        for (int j = 0; j < 3; ++j) {
            Vec3 dr{};
            if (j == 0) dr.x = step;
            if (j == 1) dr.y = step;
            if (j == 2) dr.z = step;
            const Vec3 hp = tet_field(mt, r + dr);
            const Vec3 hm = tet_field(mt, r - dr);
            jac[0][j] = (hp.x - hm.x) / (2 * step);
            jac[1][j] = (hp.y - hm.y) / (2 * step);
            jac[2][j] = (hp.z - hm.z) / (2 * step);
        }
        const double div = jac[0][0] + jac[1][1] + jac[2][2];
        const Vec3 curl{jac[2][1] - jac[1][2], jac[0][2] - jac[2][0], jac[1][0] - jac[0][1]};
        const double bound = 1e-4 * tet_field(mt, r).norm() / edge;
        CHECK(std::abs(div) <= bound);
        CHECK(curl.norm() <= bound);
    }
}

TEST_CASE("degenerate faces and tetrahedra are rejected") {
    CHECK_THROWS_AS(triangle_tensor({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {0, 0, 1}), GeometryError);
    CHECK_THROWS_AS(tet_tensor({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.25, 0.25, 0}}, {5, 5, 5}),
                    GeometryError);
}
