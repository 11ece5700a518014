#pragma once

// Adaptive embedded Runge-Kutta of order 5(4), Dormand-Prince coefficients,
// with the classic quartic dense-output interpolant. Planar systems only;
// that is all the phase-plane work here needs.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "boreforge/num.hpp"

namespace boreforge {

namespace dp5 {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
} // namespace dp5

struct Dopri5Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_max = 0.5;
    std::uint64_t max_steps = 50'000'000;
};

// Dense representation of one accepted step on [t0, t0+h].
struct Dopri5Step {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec2, 5> rcont{};

    Vec2 eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        return rcont[0]
             + th * (rcont[1] + th1 * (rcont[2] + th * (rcont[3] + th1 * rcont[4])));
    }
};

// Integrates y' = f(y) from (t0, y0). After every accepted step calls
// observer(step, y_new); integration stops when stop(t, y) returns true or
// t exceeds t_end. Returns final (t, y); throws on step-size underflow.
template <class F, class Observer, class Stop>
std::pair<double, Vec2> dopri5_integrate(F&& f, double t0, Vec2 y0, double t_end,
                                         const Dopri5Options& opt, Observer&& observer,
                                         Stop&& stop) {
    using namespace dp5;
    double t = t0;
    Vec2 y = y0;
    Vec2 k1 = f(y);
    double h = opt.h_init;
    double facold = 1e-4;
    const double safe = 0.9, facl = 0.2, facr = 10.0, beta = 0.04;
    const double expo1 = 0.2 - beta * 0.75;

    for (std::uint64_t n = 0; n < opt.max_steps; ++n) {
        if (stop(t, y)) return {t, y};
        if (t >= t_end) return {t, y};
        h = std::min(h, opt.h_max);
        h = std::min(h, t_end - t);
        if (h < 1e-14 * std::max(1.0, std::fabs(t)))
            throw std::runtime_error("dopri5: step size underflow");

        const Vec2 k2 = f(y + h * (a21 * k1));
        const Vec2 k3 = f(y + h * (a31 * k1 + a32 * k2));
        const Vec2 k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec2 k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec2 k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec2 ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const Vec2 k7 = f(ynew);
        const Vec2 ee = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        auto sk = [&](double y0c, double y1c) {
            return opt.atol + opt.rtol * std::max(std::fabs(y0c), std::fabs(y1c));
        };
        const double ex = ee.x / sk(y.x, ynew.x);
        const double ey = ee.y / sk(y.y, ynew.y);
        const double err = std::sqrt(0.5 * (ex * ex + ey * ey));

        if (err <= 1.0) {
            Dopri5Step st;
            st.t0 = t;
            st.h = h;
            const Vec2 ydiff = ynew - y;
            const Vec2 bspl = h * k1 - ydiff;
            st.rcont[0] = y;
            st.rcont[1] = ydiff;
            st.rcont[2] = bspl;
            st.rcont[3] = ydiff - h * k7 - bspl;
            st.rcont[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            t += h;
            y = ynew;
            k1 = k7; // FSAL
            observer(st, y);

            const double fac11 = std::pow(std::max(err, 1e-32), expo1);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / facr, std::min(1.0 / facl, fac / safe));
            h = h / fac;
            facold = std::max(err, 1e-4);
        } else {
            const double fac11 = std::pow(err, expo1);
            h = h / std::min(1.0 / facl, fac11 / safe);
        }
    }
    throw std::runtime_error("dopri5: max step count exceeded");
}

} // namespace boreforge
