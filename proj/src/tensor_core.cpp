#include "tetfield/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tetfield/errors.hpp"

namespace tetfield {

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);
constexpr double kAtanhClamp = 1.0 - 1e-15;

double clamp_unit(double t) {
    if (t > kAtanhClamp) return kAtanhClamp;
    if (t < -kAtanhClamp) return -kAtanhClamp;
    if (std::isnan(t)) return 0.0;
    return t;
}

double atanh_ratio(double num, double den) { return std::atanh(clamp_unit(num / den)); }

double atan_ratio(double num, double den) {
    const double t = num / den;
    if (std::isnan(t)) return 0.0;
    return std::atan(t);
}

// atanh(a) - atanh(b) through the difference identity; one transcendental
// instead of two on the evaluation hot path.
double atanh_diff(double a, double b) {
    return std::atanh(clamp_unit((a - b) / (1.0 - a * b)));
}

// atan(a) - atan(b); the identity wraps by pi when a b < -1.
double atan_diff(double a, double b) {
    const double ab = a * b;
    const double t = (a - b) / (1.0 + ab);
    double r = std::isnan(t) ? 0.0 : std::atan(t);
    if (ab < -1.0) r += std::copysign(std::numbers::pi, a);
    return r;
}

// Squared-distance expressions; rounding may push them a hair negative.
double sqrt_nonneg(double v) { return std::sqrt(std::max(v, 0.0)); }

void check_params(double h, double l) {
    if (!(h > 0.0) || !(l > 0.0)) {
        throw ParameterError("right-triangle parameters must be positive");
    }
}

}  // namespace

double guard_z(double z, double scale) {
    const double eps = kZGuardRel * scale;
    if (z >= eps || z <= -eps) return z;
    return (z < 0.0) ? -eps : eps;
}

double fn_F(double x, double y, double z, double yp, double h, double l) {
    const double hl = std::sqrt(h * h + l * l);
    const double num = l * l - l * x + h * y - h * yp * (1.0 + (l * l) / (h * h));
    const double den =
        hl * sqrt_nonneg((x - l) * (x - l) + y * y - 2.0 * (l * l - l * x + h * y) * yp / h +
                         yp * yp * (1.0 + (l * l) / (h * h)) + z * z);
    return (h / hl) * atanh_ratio(num, den);
}

double fn_G(double x, double y, double z, double yp) {
    const double u = y - yp;
    return atanh_ratio(u, std::sqrt(x * x + u * u + z * z));
}

double fn_K(double x, double y, double z, double xp, double h, double l) {
    const double hl = std::sqrt(h * h + l * l);
    const double num = h * h - h * y + l * x - l * xp * (1.0 + (h * h) / (l * l));
    const double den =
        hl * sqrt_nonneg((y - h) * (y - h) + x * x - 2.0 * xp * (h * h + l * x - h * y) / l +
                         xp * xp * (1.0 + (h * h) / (l * l)) + z * z);
    return (l / hl) * atanh_ratio(num, den);
}

double fn_L(double x, double y, double z, double xp) {
    const double u = x - xp;
    return atanh_ratio(u, std::sqrt(u * u + y * y + z * z));
}

double fn_P(double x, double y, double z, double xp, double h, double l) {
    const double num = x * (h - y) - xp * (h * (1.0 - x / l) - y) - h * (x * x + z * z) / l;
    const double den =
        z * sqrt_nonneg((y - h) * (y - h) + x * x + xp * xp * (1.0 + (h * h) / (l * l)) -
                        2.0 * xp * (h * h + l * x - h * y) / l + z * z);
    return atan_ratio(num, den);
}

double fn_Q(double x, double y, double z, double xp) {
    const double u = x - xp;
    return -atan_ratio(u * y, z * std::sqrt(u * u + y * y + z * z));
}

namespace {

// Shared geometry of one guarded evaluation against the l-triangle: the
// radicands of every F/G/K/L/P/Q endpoint collapse to the distances from
// the field point to the three triangle vertices (l,0,0), (0,h,0), (0,0,0).
struct LegFrame {
    double x, y, z;
    double hl2, hl;
    double r_d;  // distance to the right-angle vertex (origin)
    double r_a;  // distance to (l,0,0)
    double r_b;  // distance to (0,h,0)
};

LegFrame make_frame(const LocalPoint& p, double h, double l) {
    LegFrame f;
    f.x = p.x;
    f.y = p.y;
    f.z = guard_z(p.z, std::max(h, l));
    f.hl2 = h * h + l * l;
    f.hl = std::sqrt(f.hl2);
    const double z2 = f.z * f.z;
    f.r_d = std::sqrt(f.x * f.x + f.y * f.y + z2);
    f.r_a = std::sqrt((f.x - l) * (f.x - l) + f.y * f.y + z2);
    f.r_b = std::sqrt(f.x * f.x + (f.y - h) * (f.y - h) + z2);
    return f;
}

}  // namespace

double n_xz_l(const LocalPoint& p, double h, double l) {
    check_params(h, l);
    const LegFrame f = make_frame(p, h, l);
    // F(h) - F(0) - (G(h) - G(0)) with the atanh differences paired
    const double a = l * l - l * f.x + h * f.y;
    const double tf1 = clamp_unit((a - f.hl2) / (f.hl * f.r_b));
    const double tf0 = clamp_unit(a / (f.hl * f.r_a));
    const double tg1 = clamp_unit((f.y - h) / f.r_b);
    const double tg0 = clamp_unit(f.y / f.r_d);
    return -kInv4Pi * ((h / f.hl) * atanh_diff(tf1, tf0) - atanh_diff(tg1, tg0));
}

double n_yz_l(const LocalPoint& p, double h, double l) {
    check_params(h, l);
    const LegFrame f = make_frame(p, h, l);
    // K(l) - K(0) - (L(l) - L(0))
    const double c = h * h - h * f.y + l * f.x;
    const double tk1 = clamp_unit((c - f.hl2) / (f.hl * f.r_a));
    const double tk0 = clamp_unit(c / (f.hl * f.r_b));
    const double tl1 = clamp_unit((f.x - l) / f.r_a);
    const double tl0 = clamp_unit(f.x / f.r_d);
    return -kInv4Pi * ((l / f.hl) * atanh_diff(tk1, tk0) - atanh_diff(tl1, tl0));
}

double n_zz_l(const LocalPoint& p, double h, double l) {
    check_params(h, l);
    const LegFrame f = make_frame(p, h, l);
    // P(l) - P(0) - (Q(l) - Q(0)); Q carries its own leading minus
    const double base = f.x * (h - f.y) - h * (f.x * f.x + f.z * f.z) / l;
    const double pn_l = base - (l * h - h * f.x - l * f.y);
    const double tp1 = pn_l / (f.z * f.r_a);
    const double tp0 = base / (f.z * f.r_b);
    const double tq1 = (f.x - l) * f.y / (f.z * f.r_a);
    const double tq0 = f.x * f.y / (f.z * f.r_d);
    return -kInv4Pi * (atan_diff(tp1, tp0) + atan_diff(tq1, tq0));
}

double n_xz_k(const LocalPoint& p, double h, double k) {
    return -n_xz_l({-p.x, p.y, p.z}, h, k);
}

double n_yz_k(const LocalPoint& p, double h, double k) {
    return n_yz_l({-p.x, p.y, p.z}, h, k);
}

double n_zz_k(const LocalPoint& p, double h, double k) {
    return n_zz_l({-p.x, p.y, p.z}, h, k);
}

double n_xz_k_explicit(const LocalPoint& p, double h, double k) {
    check_params(h, k);
    // G(h) - G(0) - (F(h) - F(0)), the G difference at the point itself and
    // the F difference at the x-mirror: the second-quadrant hypotenuse is
    // the reflection of the first-quadrant one. G is even in x.
    const LegFrame f = make_frame({-p.x, p.y, p.z}, h, k);
    const double a = k * k - k * f.x + h * f.y;
    const double tf1 = clamp_unit((a - f.hl2) / (f.hl * f.r_b));
    const double tf0 = clamp_unit(a / (f.hl * f.r_a));
    const double tg1 = clamp_unit((f.y - h) / f.r_b);
    const double tg0 = clamp_unit(f.y / f.r_d);
    return -kInv4Pi * (atanh_diff(tg1, tg0) - (h / f.hl) * atanh_diff(tf1, tf0));
}

PartialTensor local_tensor(const LocalPoint& p, const RightTriangleParams& params) {
    const double h = params.h, k = params.k, l = params.l;
    check_params(h, l);
    check_params(h, k);
    const LocalPoint g = {p.x, p.y, guard_z(p.z, std::max({h, k, l}))};
    return {n_xz_k(g, h, k) + n_xz_l(g, h, l),
            n_yz_k(g, h, k) + n_yz_l(g, h, l),
            n_zz_k(g, h, k) + n_zz_l(g, h, l)};
}

}  // namespace tetfield
