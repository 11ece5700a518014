#pragma once

// Test-only oracles, kept independent of the library's solver paths: a
// fixed-step RK4 reference integrator, adaptive Simpson quadrature, and a
// plain bisection root finder.

#include <cmath>
#include <functional>
#include <vector>

#include "boreforge/num.hpp"

namespace oracle {

using boreforge::Vec2;

struct Rk4Result {
    Vec2 final_state;
    double final_time;
    std::vector<double> t;
    std::vector<Vec2> y;
};

template <class F>
Rk4Result rk4_until(F&& f, Vec2 y0, double dt, const Vec2& target, double tol,
                    double t_max, double record_dt = 0.0) {
    Rk4Result out;
    Vec2 y = y0;
    double t = 0.0;
    double next_record = 0.0;
    while ((y - target).norm() > tol && t < t_max) {
        if (record_dt > 0.0 && t >= next_record) {
            out.t.push_back(t);
            out.y.push_back(y);
            next_record += record_dt;
        }
        const Vec2 k1 = f(y);
        const Vec2 k2 = f(y + (0.5 * dt) * k1);
        const Vec2 k3 = f(y + (0.5 * dt) * k2);
        const Vec2 k4 = f(y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;
    }
    out.final_state = y;
    out.final_time = t;
    return out;
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 30) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int d) -> double {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - m) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, flm, fmid, left, d - 1)
             + rec(m, hi, fmid, frm, fhi, right, d - 1);
    };
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, depth);
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (lo + hi);
        const double fm = f(m);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

// deterministic xorshift RNG for property tests
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}
    double uniform(double lo, double hi) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        const double u = static_cast<double>(state >> 11) / 9007199254740992.0;
        return lo + (hi - lo) * u;
    }
};

} // namespace oracle
