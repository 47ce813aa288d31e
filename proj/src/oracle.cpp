#include "tetfield/oracle.hpp"

#include <cmath>
#include <numbers>

#include "tetfield/errors.hpp"

namespace tetfield {

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

// Degree-5 symmetric 7-point rule (barycentric). Weights sum to one.
struct RulePoint {
    double w, a, b, c;
};

constexpr double kA1 = 0.059715871789769820;
constexpr double kB1 = 0.470142064105115090;
constexpr double kW1 = 0.132394152788506180;  // (155 + sqrt(15)) / 1200
constexpr double kA2 = 0.797426985353087320;
constexpr double kB2 = 0.101286507323456340;
constexpr double kW2 = 0.125939180544827150;  // (155 - sqrt(15)) / 1200

constexpr RulePoint kRule[7] = {
    {0.225, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
    {kW1, kA1, kB1, kB1}, {kW1, kB1, kA1, kB1}, {kW1, kB1, kB1, kA1},
    {kW2, kA2, kB2, kB2}, {kW2, kB2, kA2, kB2}, {kW2, kB2, kB2, kA2},
};

double magnitude(double v) { return std::abs(v); }
double magnitude(const Vec3& v) { return v.norm(); }

template <class T, class F>
T rule_apply(const F& f, const Vec3& a, const Vec3& b, const Vec3& c) {
    const double area = 0.5 * cross(b - a, c - a).norm();
    T acc{};
    for (const RulePoint& q : kRule) {
        acc += f(a * q.a + b * q.b + c * q.c) * q.w;
    }
    return acc * area;
}

template <class T, class F>
T integrate_recursive(const F& f, const Vec3& a, const Vec3& b, const Vec3& c, T coarse,
                      const QuadratureSpec& spec, double abs_budget, int depth) {
    const Vec3 mab = (a + b) * 0.5;
    const Vec3 mbc = (b + c) * 0.5;
    const Vec3 mca = (c + a) * 0.5;
    const T s0 = rule_apply<T>(f, a, mab, mca);
    const T s1 = rule_apply<T>(f, mab, b, mbc);
    const T s2 = rule_apply<T>(f, mca, mbc, c);
    const T s3 = rule_apply<T>(f, mab, mbc, mca);
    T fine = s0;
    fine += s1;
    fine += s2;
    fine += s3;

    const double err = magnitude(fine - coarse);
    if (err <= std::max(abs_budget, spec.rel_tol * magnitude(fine))) return fine;
    if (depth >= spec.max_subdivisions) {
        throw OracleError("triangle quadrature did not converge within subdivision budget");
    }

    const double child_budget = abs_budget * 0.25;
    T total = integrate_recursive<T>(f, a, mab, mca, s0, spec, child_budget, depth + 1);
    total += integrate_recursive<T>(f, mab, b, mbc, s1, spec, child_budget, depth + 1);
    total += integrate_recursive<T>(f, mca, mbc, c, s2, spec, child_budget, depth + 1);
    total += integrate_recursive<T>(f, mab, mbc, mca, s3, spec, child_budget, depth + 1);
    return total;
}

template <class T, class F>
T integrate_triangle(const F& f, const Vec3& a, const Vec3& b, const Vec3& c,
                     const QuadratureSpec& spec) {
    const T coarse = rule_apply<T>(f, a, b, c);
    return integrate_recursive<T>(f, a, b, c, coarse, spec, spec.abs_tol, 0);
}

double surface_charge(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m) {
    return dot(normalized(cross(a - c, b - c)), m);
}

}  // namespace

MagneticScalarPotential potential_quadrature(const Vec3& a, const Vec3& b, const Vec3& c,
                                             const Vec3& m, const Vec3& r,
                                             const QuadratureSpec& spec) {
    const double sigma = surface_charge(a, b, c, m);
    const auto f = [&](const Vec3& rp) { return kInv4Pi * sigma / (r - rp).norm(); };
    return {integrate_triangle<double>(f, a, b, c, spec)};
}

Vec3 field_quadrature(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& m, const Vec3& r,
                      const QuadratureSpec& spec) {
    const double sigma = surface_charge(a, b, c, m);
    const auto f = [&](const Vec3& rp) {
        const Vec3 d = r - rp;
        const double dist = d.norm();
        return d * (kInv4Pi * sigma / (dist * dist * dist));
    };
    return integrate_triangle<Vec3>(f, a, b, c, spec);
}

Vec3 dipole_field(const Vec3& moment, const Vec3& center, const Vec3& r) {
    const Vec3 d = r - center;
    const double dist = d.norm();
    if (!(dist > 0.0)) throw ParameterError("dipole field evaluated at its own center");
    const Vec3 u = d / dist;
    return (u * (3.0 * dot(u, moment)) - moment) * (kInv4Pi / (dist * dist * dist));
}

}  // namespace tetfield
