#pragma once

// Shared geometric test data over F_10007.

#include "skly/sklyanin.hpp"

namespace skly::testfix {

inline const FpDesc F{10007};

inline CurvePoint<Fp> point_from(const Curve<Fp>& c, std::uint64_t start) {
    for (std::uint64_t x = start;; ++x) {
        Fp fx(x, F.p);
        Fp r = c.rhs(fx);
        if (r.is_zero()) return CurvePoint<Fp>(fx, Fp(0, F.p));
        if (auto y = sqrt_mod(r.value(), F.p)) return CurvePoint<Fp>(fx, Fp(*y, F.p));
    }
}

// fixture curves have group order coprime to 3, so division by 3 is
// always solvable (#E(F_10007): a=1,b=2 -> 10136; a=1,b=5 -> 9880)
inline GeometricData<Fp> quadratic_gd() {
    GeometricData<Fp> gd;
    gd.curve = Curve<Fp>(Fp(1, F.p), Fp(2, F.p));
    gd.kind = AlgebraKind::quadratic;
    gd.t = point_from(gd.curve, 2);
    Divisor<Fp> d0;
    d0.add(point_from(gd.curve, 20), 1);
    d0.add(point_from(gd.curve, 400), 1);
    d0.add(point_from(gd.curve, 9000), 1);
    gd.line_bundle = d0;
    return gd;
}

inline GeometricData<Fp> cubic_gd() {
    GeometricData<Fp> gd;
    gd.curve = Curve<Fp>(Fp(1, F.p), Fp(5, F.p));
    gd.kind = AlgebraKind::cubic;
    gd.t = point_from(gd.curve, 3);
    Divisor<Fp> d0;
    d0.add(point_from(gd.curve, 50), 1);
    d0.add(point_from(gd.curve, 777), 1);
    gd.line_bundle = d0;
    return gd;
}

inline std::vector<int> quadratic_hilbert(int N) {
    std::vector<int> h;
    for (int n = 0; n <= N; ++n) h.push_back((n + 1) * (n + 2) / 2);
    return h;
}

// coefficients of 1/((1-t)^2 (1-t^2))
inline std::vector<int> cubic_hilbert(int N) {
    std::vector<int> h(static_cast<size_t>(N) + 1, 0);
    for (int n = 0; n <= N; ++n) {
        int acc = 0;
        for (int k = 0; k <= n; k += 2) acc += n - k + 1;  // sum over even parts
        h[static_cast<size_t>(n)] = acc;
    }
    return h;
}

}  // namespace skly::testfix
