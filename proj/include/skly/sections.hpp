#pragma once

// Function-field elements u(x) + v(x)*y on a Weierstrass curve, their local
// expansions, valuations and Riemann-Roch spaces L(D).

#include <optional>
#include <vector>

#include "skly/curve.hpp"
#include "skly/poly.hpp"

namespace skly {

/// Element of k(E) written as u(x) + v(x)*y with u, v rational in x.
template <class K>
struct FFElem {
    RatFunc<K> u, v;

    FFElem() = default;
    FFElem(RatFunc<K> uu, RatFunc<K> vv) : u(std::move(uu)), v(std::move(vv)) {}

    static FFElem zero(typename K::Desc d) { return FFElem(RatFunc<K>(d), RatFunc<K>(d)); }
    static FFElem one(typename K::Desc d) {
        return FFElem(RatFunc<K>::constant(d, d.one()), RatFunc<K>(d));
    }
    static FFElem constant(typename K::Desc d, const K& k) {
        return FFElem(RatFunc<K>::constant(d, k), RatFunc<K>(d));
    }
    static FFElem x(typename K::Desc d) {
        return FFElem(RatFunc<K>(Poly<K>::x(d)), RatFunc<K>(d));
    }
    static FFElem y(typename K::Desc d) {
        return FFElem(RatFunc<K>(d), RatFunc<K>::constant(d, d.one()));
    }

    typename K::Desc desc() const { return u.desc(); }
    bool is_zero() const { return u.is_zero() && v.is_zero(); }

    FFElem operator-() const { return FFElem(-u, -v); }
    FFElem operator+(const FFElem& o) const { return FFElem(u + o.u, v + o.v); }
    FFElem operator-(const FFElem& o) const { return FFElem(u - o.u, v - o.v); }
    FFElem operator*(const K& k) const { return FFElem(u * k, v * k); }

    /// Product in k(E); y^2 is folded into x^3 + a x + b.
    FFElem mul(const Curve<K>& c, const FFElem& o) const {
        RatFunc<K> cc(c.rhs_poly());
        return FFElem(u * o.u + v * o.v * cc, u * o.v + v * o.u);
    }
    FFElem inverse(const Curve<K>& c) const {
        RatFunc<K> cc(c.rhs_poly());
        RatFunc<K> norm = u * u - v * v * cc;  // (u+vy)(u-vy)
        if (norm.is_zero()) throw Error("FFElem inverse of zero");
        return FFElem(u / norm, -(v / norm));
    }

    bool operator==(const FFElem& o) const { return u == o.u && v == o.v; }
};

/// A point of the curve given by Laurent expansions of its coordinates in
/// a local parameter; carries enough orders for downstream arithmetic.
template <class K>
struct SeriesPoint {
    Laurent<K> x, y;
};

/// Expansion at the origin O in the parameter t = x/y:
/// x ~ t^-2, y ~ t^-3.  Coordinates exact through order `order`.
template <class K>
SeriesPoint<K> expand_at_infinity(const Curve<K>& c, int order) {
    auto d = c.desc();
    const int T = order + 10;
    // s = 1/y satisfies s = t^3 + a t s^2 + b s^3; iterate from s = t^3
    Laurent<K> t = Laurent<K>(d, 1, T);
    t.at(1) = d.one();
    Laurent<K> t3(d, 3, T);
    t3.at(3) = d.one();
    Laurent<K> s = t3;
    Laurent<K> a = Laurent<K>::constant(d, c.a());
    Laurent<K> b = Laurent<K>::constant(d, c.b());
    int iters = T / 4 + 3;
    for (int i = 0; i < iters; ++i) {
        Laurent<K> s2 = s * s;
        Laurent<K> next = t3 + a * t * s2 + b * s2 * s;
        // re-pin validity: the fixed point is exact where computed
        Laurent<K> fixed(d, 3, T);
        for (int e = 3; e < T; ++e) fixed.at(e) = next.known_through(e) ? next.coeff(e) : d.zero();
        s = fixed;
    }
    SeriesPoint<K> sp;
    sp.y = s.inverse();            // valid on [-3, T-6)
    sp.x = t * sp.y;               // ~ t^-2
    return sp;
}

/// Expansion at an affine point.  Parameter: t = x - x0 when y0 != 0,
/// t = y at a 2-torsion point.
template <class K>
SeriesPoint<K> expand_at_affine(const Curve<K>& c, const CurvePoint<K>& p, int order) {
    if (p.inf) throw Error("expand_at_affine at infinity");
    auto d = c.desc();
    const int T = std::max(order, 4);
    SeriesPoint<K> sp;
    if (!p.y.is_zero()) {
        // x = x0 + t; y from y^2 = c(x0 + t), solved coefficient by coefficient
        Laurent<K> xs(d, 0, T);
        xs.at(0) = p.x;
        xs.at(1) = d.one();
        Poly<K> cp = c.rhs_poly();
        // c(x0+t) = c(x0) + c'(x0) t + 3 x0 t^2 + t^3
        K cs[4] = {cp.eval(p.x), cp.derivative().eval(p.x), d.make(3) * p.x, d.one()};
        std::vector<K> yc(static_cast<size_t>(T), d.zero());
        yc[0] = p.y;
        K inv2y = (d.make(2) * p.y).inverse();
        for (int n = 1; n < T; ++n) {
            K acc = n <= 3 ? cs[n] : d.zero();
            for (int i = 1; i < n; ++i)
                acc -= yc[static_cast<size_t>(i)] * yc[static_cast<size_t>(n - i)];
            yc[static_cast<size_t>(n)] = acc * inv2y;
        }
        Laurent<K> y(d, 0, T);
        for (int e = 0; e < T; ++e) y.at(e) = yc[static_cast<size_t>(e)];
        sp.x = xs;
        sp.y = y;
        return sp;
    }
    // 2-torsion: t = y, solve c(x0 + delta) = t^2
    K x0 = p.x;
    Poly<K> cp = c.rhs_poly();
    K c1 = cp.derivative().eval(x0);  // nonzero by smoothness
    if (c1.is_zero()) throw Error("singular point in expansion");
    K c2 = d.make(3) * x0;
    K inv_c1 = c1.inverse();
    std::vector<K> delta(static_cast<size_t>(std::max(T, 1)), d.zero());
    std::vector<K> sq(static_cast<size_t>(std::max(T, 1)), d.zero());  // delta^2 coefficients
    for (int n = 1; n < T; ++n) {
        // sq[n] over current delta (indices < n)
        K s2 = d.zero();
        for (int i = 1; i < n; ++i) s2 += delta[static_cast<size_t>(i)] * delta[static_cast<size_t>(n - i)];
        sq[static_cast<size_t>(n)] = s2;
        K s3 = d.zero();
        for (int i = 1; i < n - 1; ++i) s3 += delta[static_cast<size_t>(i)] * sq[static_cast<size_t>(n - i)];
        K rhs = (n == 2) ? d.one() : d.zero();
        delta[static_cast<size_t>(n)] = (rhs - c2 * s2 - s3) * inv_c1;
    }
    Laurent<K> x(d, 0, T);
    x.at(0) = x0;
    for (int e = 1; e < T; ++e) x.at(e) = delta[static_cast<size_t>(e)];
    Laurent<K> y(d, 1, T);
    y.at(1) = d.one();
    sp.x = x;
    sp.y = y;
    return sp;
}

template <class K>
SeriesPoint<K> expand_at(const Curve<K>& c, const CurvePoint<K>& p, int order) {
    return p.inf ? expand_at_infinity(c, order) : expand_at_affine(c, p, order);
}

/// Group-law translate of a series point by a constant point q.
template <class K>
SeriesPoint<K> series_translate(const Curve<K>& c, const SeriesPoint<K>& sp,
                                const CurvePoint<K>& q) {
    if (q.inf) return sp;
    auto d = c.desc();
    Laurent<K> qx = Laurent<K>::constant(d, q.x);
    Laurent<K> qy = Laurent<K>::constant(d, q.y);
    Laurent<K> dx = sp.x - qx;
    auto val = dx.valuation();
    if (!val) throw Error("series_translate: base point collides with translate");
    Laurent<K> lam = (sp.y - qy) * dx.inverse();
    Laurent<K> x3 = lam * lam - sp.x - qx;
    Laurent<K> y3 = lam * (sp.x - x3) - sp.y;
    return SeriesPoint<K>{x3, y3};
}

template <class K>
Laurent<K> eval_ratfunc(const RatFunc<K>& f, const Laurent<K>& x) {
    Laurent<K> num = eval_poly(f.num(), x);
    if (f.den().degree() == 0) return num;  // monic constant denominator
    return num * eval_poly(f.den(), x).inverse();
}

/// Expansion of f at the series point; exact where validity allows.
template <class K>
Laurent<K> evaluate(const FFElem<K>& f, const SeriesPoint<K>& sp) {
    Laurent<K> r = eval_ratfunc(f.u, sp.x);
    if (!f.v.is_zero()) r = r + eval_ratfunc(f.v, sp.x) * sp.y;
    return r;
}

/// Order of vanishing of a nonzero f at P (negative = pole order).
/// Expansion order grows on demand until the valuation is visible.
template <class K>
int ord_at(const Curve<K>& c, const FFElem<K>& f, const CurvePoint<K>& p, int initial_order = 16) {
    if (f.is_zero()) throw Error("ord_at of the zero function");
    for (int T = std::max(initial_order, 8); T <= (1 << 14); T *= 2) {
        SeriesPoint<K> sp = expand_at(c, p, T);
        Laurent<K> e = evaluate(f, sp);
        if (auto v = e.valuation()) return *v;
    }
    throw Error("ord_at: valuation not determined at the expansion cap");
}

/// Value of f at P; nullopt at a pole.
template <class K>
std::optional<K> eval_at(const Curve<K>& c, const FFElem<K>& f, const CurvePoint<K>& p) {
    if (f.is_zero()) return c.desc().zero();
    if (!p.inf) {
        auto du = f.u.eval(p.x);
        auto dv = f.v.eval(p.x);
        if (du && dv) return *du + *dv * p.y;
    }
    int o = ord_at(c, f, p);
    if (o < 0) return std::nullopt;
    if (o > 0) return c.desc().zero();
    for (int T = 16; T <= (1 << 14); T *= 2) {
        Laurent<K> e = evaluate(f, expand_at(c, p, T));
        if (e.known_through(0)) return e.coeff(0);
    }
    throw Error("eval_at: precision cap reached");
}

/// Basis of L(D) = {f : div(f) + D >= 0}.  The basis is canonical: it comes
/// from the reduced echelon kernel of the constraint matrix on the spanning
/// set {x^i / den, x^i y / den}.
template <class K>
std::vector<FFElem<K>> riemann_roch_space(const Curve<K>& c, const Divisor<K>& D) {
    auto d = c.desc();
    // universal denominator from affine positive part
    std::map<K, int, decltype([](const K& a, const K& b) { return a.cmp(b) < 0; })> pole_exp;
    for (const auto& [p, m] : D.entries()) {
        if (p.inf || m <= 0) continue;
        auto it = pole_exp.find(p.x);
        if (it == pole_exp.end())
            pole_exp.emplace(p.x, m);
        else
            it->second += m;
    }
    Poly<K> den = Poly<K>::constant(d, d.one());
    int den_deg = 0;
    for (const auto& [x0, e] : pole_exp) {
        Poly<K> lin = Poly<K>::linear(d, x0);
        for (int k = 0; k < e; ++k) den = den * lin;
        den_deg += e;
    }
    const int at_inf = D.multiplicity(CurvePoint<K>::infinity());
    const int M = std::max(at_inf, 0) + 2 * den_deg;

    // spanning candidates x^i/den (2i <= M), x^i y/den (2i+3 <= M)
    std::vector<FFElem<K>> cand;
    RatFunc<K> invden(Poly<K>::constant(d, d.one()), den);
    Poly<K> xp = Poly<K>::constant(d, d.one());
    for (int i = 0; 2 * i <= M; ++i) {
        cand.emplace_back(RatFunc<K>(xp, den), RatFunc<K>(d));
        xp = xp * Poly<K>::x(d);
    }
    xp = Poly<K>::constant(d, d.one());
    for (int i = 0; 2 * i + 3 <= M; ++i) {
        cand.emplace_back(RatFunc<K>(d), RatFunc<K>(xp, den));
        xp = xp * Poly<K>::x(d);
    }
    if (cand.empty()) return {};

    // constraint points: supports, their negatives (denominator zeros), O
    std::vector<CurvePoint<K>> cpts{CurvePoint<K>::infinity()};
    auto add_pt = [&](const CurvePoint<K>& p) {
        if (std::find(cpts.begin(), cpts.end(), p) == cpts.end()) cpts.push_back(p);
    };
    for (const auto& [p, m] : D.entries()) {
        if (p.inf) continue;
        add_pt(p);
        add_pt(c.negate(p));
    }

    // rows = candidates, cols = stacked coefficient constraints
    std::vector<std::vector<K>> rows(cand.size());
    for (const auto& p : cpts) {
        const int need = -D.multiplicity(p);  // require ord >= need
        const int floor_ord = p.inf ? -(M + 3) : -(2 * den_deg + 1);
        if (need <= floor_ord) continue;
        int T = (need - floor_ord) + 12;
        std::vector<Laurent<K>> exps;
        for (;; T *= 2) {
            if (T > (1 << 14)) throw Error("riemann_roch_space: expansion cap");
            exps.clear();
            SeriesPoint<K> sp = expand_at(c, p, T);
            bool ok = true;
            for (const auto& g : cand) {
                Laurent<K> e = evaluate(g, sp);
                if (!e.known_through(need - 1)) {
                    ok = false;
                    break;
                }
                exps.push_back(e);
            }
            if (ok) break;
        }
        for (size_t i = 0; i < cand.size(); ++i)
            for (int e = floor_ord; e < need; ++e) rows[i].push_back(exps[i].coeff(e));
    }

    const int ncols = static_cast<int>(rows[0].size());
    Matrix<K> constraints = Matrix<K>::from_rows(rows, ncols, d);
    Subspace<K> ker = kernel(constraints);

    std::vector<FFElem<K>> basis;
    for (int i = 0; i < ker.dim(); ++i) {
        FFElem<K> f = FFElem<K>::zero(d);
        for (size_t j = 0; j < cand.size(); ++j) {
            const K& coef = ker.basis().at(i, static_cast<int>(j));
            if (coef.is_zero()) continue;
            f = f + cand[j] * coef;
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

}  // namespace skly
