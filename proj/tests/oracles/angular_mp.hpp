#pragma once

// Two-walker ordering probability from its angular integral evaluated in
// 50-digit arithmetic: panels of a quarter oscillation, each integrated by an
// adaptive 61-point Gauss-Kronrod rule.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bessel_mp.hpp"

namespace oracle {

inline mp50 order_2_mp(int la, int lb) {
    using boost::math::quadrature::gauss_kronrod;
    const mp50 pi = boost::math::constants::pi<mp50>();
    auto f = [&](const mp50& theta) {
        const mp50 p = 2 - cos(theta);
        const mp50 x = p + sqrt(p * p - 1);
        return cos(theta / 2) / sin(theta / 2) * sin(lb * theta) * pow(x, -la);
    };
    const int panels = 4 * std::max(la, lb);
    mp50 sum = 0;
    for (int i = 0; i < panels; ++i) {
        const mp50 a = pi * i / panels;
        const mp50 b = pi * (i + 1) / panels;
        sum += gauss_kronrod<mp50, 61>::integrate(f, a, b, 8, mp50("1e-40"));
    }
    return sum / pi;
}

}  // namespace oracle
