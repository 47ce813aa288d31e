#pragma once

#include <cmath>

namespace tetfield {

/// 3-component point/vector. Units depend on context (lengths in meters,
/// fields in A/m, magnetization in A/m).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }

    constexpr double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec3 normalized(const Vec3& v) { return v / v.norm(); }

/// 3x3 tensor, row-major: m[i][j] is row i, column j.
struct Mat3 {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    static constexpr Mat3 identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        return {{{c0.x, c1.x, c2.x}, {c0.y, c1.y, c2.y}, {c0.z, c1.z, c2.z}}};
    }

    Vec3 col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }
    Vec3 row(int i) const { return {m[i][0], m[i][1], m[i][2]}; }

    Mat3 transpose() const {
        return {{{m[0][0], m[1][0], m[2][0]},
                 {m[0][1], m[1][1], m[2][1]},
                 {m[0][2], m[1][2], m[2][2]}}};
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
        return r;
    }
    Mat3& operator+=(const Mat3& o) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] += o.m[i][j];
        return *this;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
            }
        return r;
    }

    double trace() const { return m[0][0] + m[1][1] + m[2][2]; }

    double max_abs() const {
        double v = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m[i][j]));
        return v;
    }

    bool finite() const {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!std::isfinite(m[i][j])) return false;
        return true;
    }
};

inline Mat3 outer(const Vec3& a, const Vec3& b) {
    return {{{a.x * b.x, a.x * b.y, a.x * b.z},
             {a.y * b.x, a.y * b.y, a.y * b.z},
             {a.z * b.x, a.z * b.y, a.z * b.z}}};
}

inline double determinant(const Mat3& a) {
    return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
           a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
           a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

/// Cramer solve of a x = b. Caller guarantees a is well conditioned.
inline Vec3 solve(const Mat3& a, const Vec3& b) {
    const double d = determinant(a);
    Mat3 ax = a, ay = a, az = a;
    for (int i = 0; i < 3; ++i) {
        const double bi = (i == 0) ? b.x : (i == 1) ? b.y : b.z;
        ax.m[i][0] = bi;
        ay.m[i][1] = bi;
        az.m[i][2] = bi;
    }
    return {determinant(ax) / d, determinant(ay) / d, determinant(az) / d};
}

}  // namespace tetfield
