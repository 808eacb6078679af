#include "loopmode/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace loopmode {
namespace {

// Minimal double-double arithmetic.  The Maclaurin series for Ai at
// moderate positive x cancels as exp(2*zeta) against the term magnitude
// (about 15 digits at x = 8), so the partial sums are kept in ~32-digit
// compensated form and rounded once at the end.
struct dd {
    double hi, lo;
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd mul(const dd& a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd div(const dd& a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double q2 = ((a.hi - p.hi) + (a.lo - p.lo)) / b;
    return quick_two_sum(q1, q2);
}

// Ai(0) and -Ai'(0) to double-double precision.
constexpr dd kC1 = {0.3550280538878172, 2.05233632436212e-17};
constexpr dd kC2 = {0.2588194037928068, -2.522243111610832e-17};
constexpr dd kSqrt3 = {1.7320508075688772, 1.0035084221806903e-16};

AiryValues airy_series(double x) {
    // Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g) with the standard f, g
    // Maclaurin solutions of w'' = x w.
    const dd x2 = two_prod(x, x);
    const dd x3 = mul(x2, {x, 0.0});
    dd f = {1.0, 0.0}, g = {x, 0.0}, fp = {0.0, 0.0}, gp = {1.0, 0.0};
    dd tf = f, tg = g, tfp = {0.5 * x2.hi, 0.5 * x2.lo}, tgp = gp;
    double scale = std::max({1.0, std::fabs(tf.hi), std::fabs(tg.hi)});
    for (int k = 0; k < 200; ++k) {
        double K = 3.0 * k;
        tf = div(mul(tf, x3), (K + 2.0) * (K + 3.0));
        tg = div(mul(tg, x3), (K + 3.0) * (K + 4.0));
        tgp = div(mul(tgp, x3), (K + 1.0) * (K + 3.0));
        if (k > 0) tfp = div(mul(tfp, x3), K * (K + 2.0));
        f = add(f, tf);
        g = add(g, tg);
        fp = add(fp, tfp);
        gp = add(gp, tgp);
        scale = std::max({scale, std::fabs(tf.hi), std::fabs(tg.hi)});
        if (std::fabs(tf.hi) < 1e-34 * scale && std::fabs(tg.hi) < 1e-34 * scale) break;
    }
    const dd a = add(mul(kC1, f), mul(mul(kC2, g), -1.0));
    const dd b = mul(add(mul(kC1, f), mul(kC2, g)), kSqrt3);
    const dd ap = add(mul(kC1, fp), mul(mul(kC2, gp), -1.0));
    const dd bp = mul(add(mul(kC1, fp), mul(kC2, gp)), kSqrt3);
    return {a.hi + a.lo, b.hi + b.lo, ap.hi + ap.lo, bp.hi + bp.lo};
}

// u_k, v_k coefficients of the large-|x| expansions (DLMF 9.7).
constexpr int kMaxAsym = 64;

AiryValues airy_asymptotic_pos(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double u = 1.0, v = 1.0, zk = 1.0;
    double su = 1.0, sv = 1.0, sau = 1.0, sav = 1.0;  // Bi sums / Ai sums
    double prev = 1.0;
    int sign = 1;
    for (int k = 1; k < kMaxAsym; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        zk /= zeta;
        sign = -sign;
        double tu = u * zk, tv = v * zk;
        if (std::fabs(tu) > prev) break;  // divergent tail reached
        prev = std::fabs(tu);
        su += tu;
        sv += tv;
        sau += sign * tu;
        sav += sign * tv;
        if (std::fabs(tu) < 1e-17 * su) break;
    }
    const double sqpi = std::sqrt(M_PI);
    const double x14 = std::pow(x, 0.25);
    const double em = std::exp(-zeta), ep = std::exp(zeta);
    return {em / (2.0 * sqpi * x14) * sau, ep / (sqpi * x14) * su,
            -x14 * em / (2.0 * sqpi) * sav, x14 * ep / sqpi * sv};
}

AiryValues airy_asymptotic_neg(double x) {
    const double t = -x;
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    double u = 1.0, v = 1.0, zk = 1.0;
    double ue = 1.0, uo = 0.0, ve = 1.0, vo = 0.0;  // even/odd partial sums
    double prev = 1.0;
    for (int k = 1; k < kMaxAsym; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        v = u * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        zk /= zeta;
        double tu = u * zk, tv = v * zk;
        if (std::fabs(tu) > prev) break;
        prev = std::fabs(tu);
        double sgn = (k / 2) % 2 ? -1.0 : 1.0;
        if (k % 2 == 0) {
            ue += sgn * tu;
            ve += sgn * tv;
        } else {
            uo += sgn * tu;
            vo += sgn * tv;
        }
        if (std::fabs(tu) < 1e-17) break;
    }
    const double sqpi = std::sqrt(M_PI);
    const double t14 = std::pow(t, 0.25);
    const double c = std::cos(zeta - M_PI / 4.0), s = std::sin(zeta - M_PI / 4.0);
    return {(c * ue + s * uo) / (sqpi * t14), (-s * ue + c * uo) / (sqpi * t14),
            t14 / sqpi * (s * ve - c * vo), t14 / sqpi * (c * ve + s * vo)};
}

}  // namespace

AiryValues airy_eval(double x) {
    if (!std::isfinite(x) || x < kAiryMinArg || x > kAiryMaxArg)
        throw std::domain_error("airy_eval: argument outside certified range");
    if (x > kAirySwitch) return airy_asymptotic_pos(x);
    if (x < -kAirySwitch) return airy_asymptotic_neg(x);
    return airy_series(x);
}

}  // namespace loopmode
