#pragma once

// 4th-order finite-difference stencils on uniform strided data, central in
// the interior with shifted variants at the edges. Extended precision keeps
// the rounding floor of nested applications below discretization error on
// thin-strip grids.

#include <cstddef>

namespace boreforge::stencil {

// first derivative at index i of n samples with given stride
inline long double d1(const long double* f, std::size_t n, std::size_t i,
                      std::size_t stride, long double h) {
    auto at = [&](std::ptrdiff_t k) { return f[(static_cast<std::ptrdiff_t>(i) + k) * static_cast<std::ptrdiff_t>(stride)]; };
    if (i >= 2 && i + 2 < n) {
        return (at(-2) - 8.0L * at(-1) + 8.0L * at(1) - at(2)) / (12.0L * h);
    }
    if (i == 0)
        return (-25.0L * at(0) + 48.0L * at(1) - 36.0L * at(2) + 16.0L * at(3) - 3.0L * at(4))
               / (12.0L * h);
    if (i == 1)
        return (-3.0L * at(-1) - 10.0L * at(0) + 18.0L * at(1) - 6.0L * at(2) + at(3))
               / (12.0L * h);
    if (i + 1 == n)
        return (25.0L * at(0) - 48.0L * at(-1) + 36.0L * at(-2) - 16.0L * at(-3) + 3.0L * at(-4))
               / (12.0L * h);
    // i + 2 == n
    return (3.0L * at(1) + 10.0L * at(0) - 18.0L * at(-1) + 6.0L * at(-2) - at(-3))
           / (12.0L * h);
}

// second derivative at index i
inline long double d2(const long double* f, std::size_t n, std::size_t i,
                      std::size_t stride, long double h) {
    auto at = [&](std::ptrdiff_t k) { return f[(static_cast<std::ptrdiff_t>(i) + k) * static_cast<std::ptrdiff_t>(stride)]; };
    const long double h2 = h * h;
    if (i >= 2 && i + 2 < n) {
        return (-at(-2) + 16.0L * at(-1) - 30.0L * at(0) + 16.0L * at(1) - at(2))
               / (12.0L * h2);
    }
    if (i == 0)
        return ((15.0L / 4) * at(0) - (77.0L / 6) * at(1) + (107.0L / 6) * at(2) - 13.0L * at(3)
                + (61.0L / 12) * at(4) - (5.0L / 6) * at(5)) / h2;
    if (i == 1)
        return ((5.0L / 6) * at(-1) - (5.0L / 4) * at(0) - (1.0L / 3) * at(1) + (7.0L / 6) * at(2)
                - (1.0L / 2) * at(3) + (1.0L / 12) * at(4)) / h2;
    if (i + 1 == n)
        return ((15.0L / 4) * at(0) - (77.0L / 6) * at(-1) + (107.0L / 6) * at(-2) - 13.0L * at(-3)
                + (61.0L / 12) * at(-4) - (5.0L / 6) * at(-5)) / h2;
    // i + 2 == n
    return ((5.0L / 6) * at(1) - (5.0L / 4) * at(0) - (1.0L / 3) * at(-1) + (7.0L / 6) * at(-2)
            - (1.0L / 2) * at(-3) + (1.0L / 12) * at(-4)) / h2;
}

} // namespace boreforge::stencil
