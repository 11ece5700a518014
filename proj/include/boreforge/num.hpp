#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace boreforge {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Mat2 {
    // row-major: [a b; c d]
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    Mat2 operator+(const Mat2& m) const { return {a + m.a, b + m.b, c + m.c, d + m.d}; }
    Mat2 operator-(const Mat2& m) const { return {a - m.a, b - m.b, c - m.c, d - m.d}; }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    // spectral-ish norm surrogate (Frobenius); enough for diagnostics
    double fnorm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

// exp(M) for 2x2 real M, closed form through the half-trace shift.
// Handles real-distinct, complex-pair, and near-defective spectra. The
// real-split branch exponentiates h +- q directly: exp(h)*cosh(q) would
// round through 0 * inf for widely separated decaying eigenvalues.
inline Mat2 expm(const Mat2& m) {
    const double h = 0.5 * m.trace();
    const Mat2 n = m - Mat2::identity() * h; // trace-free part
    const double q2 = h * h - m.det();       // = (lam1-lam2)^2 / 4
    const double aq = std::sqrt(std::fabs(q2));
    if (q2 > 0.0 && aq >= 1e-8) {
        const double ep = std::exp(h + aq);
        const double em = std::exp(h - aq);
        return Mat2::identity() * (0.5 * (ep + em)) + n * ((ep - em) / (2.0 * aq));
    }
    double ch, shq; // cosh(q), sinh(q)/q with q = sqrt(q2)
    if (aq < 1e-8) {
        ch = 1.0 + q2 / 2.0;
        shq = 1.0 + q2 / 6.0;
    } else {
        ch = std::cos(aq);
        shq = std::sin(aq) / aq;
    }
    return (Mat2::identity() * ch + n * shq) * std::exp(h);
}

// Bracketed Brent root finder. f(a) and f(b) must have opposite signs.
template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-13, double ftol = 0.0,
             int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent: root not bracketed");
    if (std::fabs(fa) < std::fabs(fb)) { std::swap(a, b); std::swap(fa, fb); }
    double c = a, fc = fa, s = b, fs = fb, d = 0.0;
    bool mflag = true;
    for (int it = 0; it < max_iter; ++it) {
        if (fb == 0.0 || std::fabs(b - a) <= xtol) break;
        if (ftol > 0.0 && std::fabs(fb) <= ftol) break;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc))
              + b * fa * fc / ((fb - fa) * (fb - fc))
              + c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double t = 0.25 * (3.0 * a + b);
        const bool cond1 = !((s > t && s < b) || (s < t && s > b));
        const bool cond2 = mflag && std::fabs(s - b) >= 0.5 * std::fabs(b - c);
        const bool cond3 = !mflag && std::fabs(s - b) >= 0.5 * std::fabs(c - d);
        const bool cond4 = mflag && std::fabs(b - c) < xtol;
        const bool cond5 = !mflag && std::fabs(c - d) < xtol;
        if (cond1 || cond2 || cond3 || cond4 || cond5) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        fs = f(s);
        d = c;
        c = b; fc = fb;
        if (fa * fs < 0.0) { b = s; fb = fs; }
        else               { a = s; fa = fs; }
        if (std::fabs(fa) < std::fabs(fb)) { std::swap(a, b); std::swap(fa, fb); }
    }
    return b;
}

// Cubic Hermite interpolation on [t0, t1] from endpoint values and slopes.
inline double hermite(double t, double t0, double t1, double y0, double y1, double d0,
                      double d1) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0
         + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least-squares line through (x_i, y_i).
template <class XS, class YS>
LinFit linear_fit(const XS& xs, const YS& ys, std::size_t n) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i]; sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    LinFit out;
    if (den == 0.0) return out;
    out.slope = (nn * sxy - sx * sy) / den;
    out.intercept = (sy - out.slope * sx) / nn;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / nn;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = out.slope * xs[i] + out.intercept;
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

} // namespace boreforge
