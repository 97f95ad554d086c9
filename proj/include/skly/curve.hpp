#pragma once

// Weierstrass elliptic curves y^2 = x^3 + a x + b over an exact field:
// group law, divisors, Picard classes, point enumeration over F_p and
// point division n*u = P.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "skly/error.hpp"
#include "skly/field.hpp"
#include "skly/poly.hpp"

namespace skly {

template <class K>
struct CurvePoint {
    bool inf = true;
    K x, y;

    CurvePoint() = default;
    CurvePoint(K px, K py) : inf(false), x(std::move(px)), y(std::move(py)) {}
    static CurvePoint infinity() { return CurvePoint(); }

    bool operator==(const CurvePoint& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }

    /// Total order (infinity first, then lex on (x, y)); used for
    /// deterministic choices, not for geometry.
    int cmp(const CurvePoint& o) const {
        if (inf && o.inf) return 0;
        if (inf) return -1;
        if (o.inf) return 1;
        int c = x.cmp(o.x);
        if (c != 0) return c;
        return y.cmp(o.y);
    }
    bool operator<(const CurvePoint& o) const { return cmp(o) < 0; }

    std::string str() const { return inf ? "O" : "(" + x.str() + "," + y.str() + ")"; }
};

template <class K>
class Curve {
  public:
    using Desc = typename K::Desc;

    Curve() = default;
    Curve(K a, K b) : a_(std::move(a)), b_(std::move(b)) {
        // 4a^3 + 27b^2 != 0: smoothness
        K disc = desc().make(4) * a_ * a_ * a_ + desc().make(27) * b_ * b_;
        if (disc.is_zero()) throw Error("singular curve: 4a^3 + 27b^2 = 0");
    }

    const K& a() const { return a_; }
    const K& b() const { return b_; }
    Desc desc() const { return a_.desc(); }

    K rhs(const K& x) const { return x * x * x + a_ * x + b_; }
    /// x^3 + a x + b as a polynomial.
    Poly<K> rhs_poly() const {
        return Poly<K>(desc(), {b_, a_, desc().zero(), desc().one()});
    }

    bool contains(const CurvePoint<K>& p) const {
        if (p.inf) return true;
        return p.y * p.y == rhs(p.x);
    }

    CurvePoint<K> negate(const CurvePoint<K>& p) const {
        if (p.inf) return p;
        return CurvePoint<K>(p.x, -p.y);
    }

    CurvePoint<K> add(const CurvePoint<K>& p, const CurvePoint<K>& q) const {
        if (p.inf) return q;
        if (q.inf) return p;
        if (p.x == q.x) {
            if (p.y == -q.y) return CurvePoint<K>::infinity();
            // tangent: p == q with y != 0
            K lam = (desc().make(3) * p.x * p.x + a_) / (desc().make(2) * p.y);
            return chord(p, q, lam);
        }
        K lam = (q.y - p.y) / (q.x - p.x);
        return chord(p, q, lam);
    }

    CurvePoint<K> sub(const CurvePoint<K>& p, const CurvePoint<K>& q) const {
        return add(p, negate(q));
    }

    CurvePoint<K> mul(std::int64_t n, CurvePoint<K> p) const {
        if (n < 0) {
            p = negate(p);
            n = -n;
        }
        CurvePoint<K> acc = CurvePoint<K>::infinity();
        while (n > 0) {
            if (n & 1) acc = add(acc, p);
            n >>= 1;
            if (n) p = add(p, p);
        }
        return acc;
    }

    bool operator==(const Curve& o) const { return a_ == o.a_ && b_ == o.b_; }

  private:
    CurvePoint<K> chord(const CurvePoint<K>& p, const CurvePoint<K>& q, const K& lam) const {
        K x3 = lam * lam - p.x - q.x;
        K y3 = lam * (p.x - x3) - p.y;
        return CurvePoint<K>(x3, y3);
    }
    K a_, b_;
};

/// Formal integer combination of curve points; zero multiplicities are
/// never stored.
template <class K>
class Divisor {
  public:
    Divisor() = default;

    static Divisor of_point(const CurvePoint<K>& p, int mult = 1) {
        Divisor d;
        d.add(p, mult);
        return d;
    }
    static Divisor of_points(const std::vector<CurvePoint<K>>& ps) {
        Divisor d;
        for (const auto& p : ps) d.add(p, 1);
        return d;
    }

    void add(const CurvePoint<K>& p, int mult) {
        if (mult == 0) return;
        auto it = m_.find(p);
        if (it == m_.end()) {
            m_.emplace(p, mult);
        } else {
            it->second += mult;
            if (it->second == 0) m_.erase(it);
        }
    }

    Divisor operator+(const Divisor& o) const {
        Divisor r(*this);
        for (const auto& [p, m] : o.m_) r.add(p, m);
        return r;
    }
    Divisor operator-(const Divisor& o) const {
        Divisor r(*this);
        for (const auto& [p, m] : o.m_) r.add(p, -m);
        return r;
    }
    Divisor operator*(int k) const {
        Divisor r;
        for (const auto& [p, m] : m_) r.add(p, m * k);
        return r;
    }

    int degree() const {
        int d = 0;
        for (const auto& [p, m] : m_) d += m;
        return d;
    }
    int multiplicity(const CurvePoint<K>& p) const {
        auto it = m_.find(p);
        return it == m_.end() ? 0 : it->second;
    }
    bool effective() const {
        for (const auto& [p, m] : m_)
            if (m < 0) return false;
        return true;
    }
    bool is_zero() const { return m_.empty(); }

    const std::map<CurvePoint<K>, int>& entries() const { return m_; }
    std::vector<CurvePoint<K>> support() const {
        std::vector<CurvePoint<K>> s;
        for (const auto& [p, m] : m_) s.push_back(p);
        return s;
    }

    /// Each point moved by +q under the group law.
    Divisor translated(const Curve<K>& c, const CurvePoint<K>& q) const {
        Divisor r;
        for (const auto& [p, m] : m_) r.add(c.add(p, q), m);
        return r;
    }

    bool operator==(const Divisor& o) const { return m_ == o.m_; }

  private:
    std::map<CurvePoint<K>, int> m_;
};

/// Isomorphism class of a line bundle on an elliptic curve:
/// (degree, group-law sum of the divisor).
template <class K>
struct PicClass {
    int degree = 0;
    CurvePoint<K> sum = CurvePoint<K>::infinity();

    bool trivial() const { return degree == 0 && sum.inf; }
    bool operator==(const PicClass& o) const { return degree == o.degree && sum == o.sum; }
    bool operator!=(const PicClass& o) const { return !(*this == o); }
};

template <class K>
PicClass<K> pic_class(const Curve<K>& c, const Divisor<K>& d) {
    PicClass<K> r;
    r.degree = d.degree();
    for (const auto& [p, m] : d.entries()) {
        r.sum = c.add(r.sum, c.mul(m, p));
    }
    return r;
}

/// Pullback along translation by t: degree fixed, sum moved by -degree*t.
template <class K>
PicClass<K> translate_class(const Curve<K>& c, const PicClass<K>& cls, const CurvePoint<K>& t) {
    return PicClass<K>{cls.degree, c.sub(cls.sum, c.mul(cls.degree, t))};
}

template <class K>
PicClass<K> pic_add(const Curve<K>& c, const PicClass<K>& u, const PicClass<K>& v) {
    return PicClass<K>{u.degree + v.degree, c.add(u.sum, v.sum)};
}
template <class K>
PicClass<K> pic_sub(const Curve<K>& c, const PicClass<K>& u, const PicClass<K>& v) {
    return PicClass<K>{u.degree - v.degree, c.sub(u.sum, v.sum)};
}
template <class K>
PicClass<K> pic_scale(const Curve<K>& c, int k, const PicClass<K>& u) {
    return PicClass<K>{k * u.degree, c.mul(k, u.sum)};
}

// ---------------------------------------------------------------------------
// F_p point enumeration

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    unsigned __int128 acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

/// Square root mod an odd prime (Tonelli-Shanks); nullopt for non-residues.
inline std::optional<std::uint64_t> sqrt_mod(std::uint64_t n, std::uint64_t p) {
    n %= p;
    if (n == 0) return 0;
    if (powmod_u64(n, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod_u64(n, (p + 1) / 4, p);
    // Tonelli-Shanks
    std::uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) == 1) ++z;
    std::uint64_t m = s;
    std::uint64_t cc = powmod_u64(z, q, p);
    std::uint64_t t = powmod_u64(n, q, p);
    std::uint64_t r = powmod_u64(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = static_cast<std::uint64_t>((unsigned __int128)tt * tt % p);
            ++i;
        }
        std::uint64_t b = cc;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = static_cast<std::uint64_t>((unsigned __int128)b * b % p);
        m = i;
        cc = static_cast<std::uint64_t>((unsigned __int128)b * b % p);
        t = static_cast<std::uint64_t>((unsigned __int128)t * cc % p);
        r = static_cast<std::uint64_t>((unsigned __int128)r * b % p);
    }
    return r;
}

/// All points of E(F_p), infinity first, ordered by (x, y).
inline std::vector<CurvePoint<Fp>> enumerate_points(const Curve<Fp>& c) {
    const std::uint64_t p = c.desc().p;
    std::vector<CurvePoint<Fp>> pts;
    pts.push_back(CurvePoint<Fp>::infinity());
    for (std::uint64_t x = 0; x < p; ++x) {
        Fp fx(x, p);
        Fp r = c.rhs(fx);
        if (r.is_zero()) {
            pts.emplace_back(fx, Fp(0, p));
            continue;
        }
        auto root = sqrt_mod(r.value(), p);
        if (!root) continue;
        std::uint64_t y = *root, yn = p - y;
        if (y > yn) std::swap(y, yn);
        pts.emplace_back(fx, Fp(y, p));
        pts.emplace_back(fx, Fp(yn, p));
    }
    return pts;
}

/// Result of solving n*u = target.
template <class K>
struct DivisionResult {
    std::vector<CurvePoint<K>> solutions;  // sorted by the point order
    bool full_torsion = false;             // n^2 solutions found
    /// Deterministic canonical representative (smallest solution).
    const CurvePoint<K>& canonical() const {
        if (solutions.empty()) throw TorsionSearchError("point division has no solution over the base field");
        return solutions.front();
    }
};

inline DivisionResult<Fp> divide_point(const Curve<Fp>& c, int n, const CurvePoint<Fp>& target) {
    if (n <= 0) throw Error("divide_point: n must be positive");
    DivisionResult<Fp> res;
    for (const auto& q : enumerate_points(c))
        if (c.mul(n, q) == target) res.solutions.push_back(q);
    res.full_torsion = static_cast<long long>(res.solutions.size()) == 1LL * n * n;
    return res;
}

namespace detail {

inline std::vector<mpz_class> divisors_of(mpz_class n, long bound = 1000000) {
    n = abs(n);
    if (n == 0) throw TorsionSearchError("zero coefficient in root search");
    std::vector<std::pair<mpz_class, int>> fac;
    for (long d = 2; d <= bound && mpz_class(d) * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            fac.emplace_back(d, e);
        }
    }
    if (n > 1) {
        if (n > mpz_class(bound) * bound)
            throw TorsionSearchError("point division over Q: coefficient factorization exhausted");
        fac.emplace_back(n, 1);
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [pr, e] : fac) {
        size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= pr;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 200000)
                    throw TorsionSearchError("point division over Q: too many divisor candidates");
            }
        }
    }
    return divs;
}

/// All rational roots of a nonzero polynomial over Q.
inline std::vector<Rat> rational_roots(const Poly<Rat>& f) {
    if (f.is_zero()) throw Error("rational_roots of zero polynomial");
    // clear denominators
    mpz_class lcm = 1;
    for (const auto& c : f.coeffs()) lcm = lcm / gcd(lcm, c.value().get_den()) * c.value().get_den();
    std::vector<mpz_class> ic(f.coeffs().size());
    for (size_t i = 0; i < ic.size(); ++i) {
        mpq_class v = f.coeffs()[i].value() * lcm;
        ic[i] = v.get_num();
    }
    std::vector<Rat> roots;
    size_t lo = 0;
    while (lo < ic.size() && ic[lo] == 0) ++lo;
    if (lo > 0) roots.push_back(Rat());  // x = 0
    if (lo + 1 >= ic.size()) return roots;
    auto ps = divisors_of(ic[lo]);
    auto qs = divisors_of(ic.back());
    for (const auto& pv : ps)
        for (const auto& qv : qs) {
            if (gcd(pv, qv) != 1) continue;
            for (int sign : {1, -1}) {
                Rat cand(mpq_class(sign * pv, qv));
                if (f.eval(cand).is_zero()) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) { return a.cmp(b) < 0; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

inline std::optional<Rat> rational_sqrt(const Rat& r) {
    if (r.is_zero()) return Rat();
    if (r.value() < 0) return std::nullopt;
    mpz_class num = r.value().get_num(), den = r.value().get_den();
    mpz_class sn, sd;
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
        return Rat(mpq_class(sn, sd));
    }
    return std::nullopt;
}

/// psi3 and u4 = psi4 / (4y): the x-parts of the 3- and 4-division polynomials.
inline Poly<Rat> psi3_poly(const Curve<Rat>& c) {
    RatDesc d;
    Rat a = c.a(), b = c.b();
    return Poly<Rat>(d, {-(a * a), Rat::from_int(12) * b, Rat::from_int(6) * a, Rat(),
                         Rat::from_int(3)});
}
inline Poly<Rat> u4_poly(const Curve<Rat>& c) {
    RatDesc d;
    Rat a = c.a(), b = c.b();
    return Poly<Rat>(
        d, {-(Rat::from_int(8) * b * b) - a * a * a, -(Rat::from_int(4) * a * b),
            -(Rat::from_int(5) * a * a), Rat::from_int(20) * b, Rat::from_int(5) * a, Rat(),
            Rat::from_int(1)});
}

}  // namespace detail

/// n*u = target over Q via the x-coordinate multiplication polynomials
/// (n <= 4) and rational root search.
inline DivisionResult<Rat> divide_point(const Curve<Rat>& c, int n, const CurvePoint<Rat>& target) {
    RatDesc d;
    if (n <= 0 || n > 4) throw Error("divide_point over Q supports 1 <= n <= 4");
    DivisionResult<Rat> res;
    auto push_candidates_for_x = [&](const Rat& x0) {
        auto y2 = c.rhs(x0);
        auto y0 = detail::rational_sqrt(y2);
        if (!y0) return;
        for (const auto& cand :
             {CurvePoint<Rat>(x0, *y0), CurvePoint<Rat>(x0, -*y0)}) {
            if (c.mul(n, cand) == target) {
                if (std::find(res.solutions.begin(), res.solutions.end(), cand) ==
                    res.solutions.end())
                    res.solutions.push_back(cand);
            }
        }
    };
    if (n == 1) {
        res.solutions.push_back(target);
        res.full_torsion = true;
        return res;
    }
    Poly<Rat> cpoly = c.rhs_poly();
    Poly<Rat> xp = Poly<Rat>::x(d);
    if (target.inf) {
        res.solutions.push_back(CurvePoint<Rat>::infinity());
        Poly<Rat> torsion_x = (n == 2) ? cpoly
                              : (n == 3) ? detail::psi3_poly(c)
                                         : cpoly * detail::u4_poly(c);
        for (const auto& x0 : detail::rational_roots(torsion_x)) push_candidates_for_x(x0);
    } else {
        // x(n*u) = x - A/B as polynomials in x (y^2 folded into c(x))
        Poly<Rat> A(d), B(d);
        if (n == 2) {
            A = detail::psi3_poly(c);
            B = cpoly * Rat::from_int(4);
        } else if (n == 3) {
            A = cpoly * detail::u4_poly(c) * Rat::from_int(8);
            Poly<Rat> p3 = detail::psi3_poly(c);
            B = p3 * p3;
        } else {
            Poly<Rat> p3 = detail::psi3_poly(c);
            Poly<Rat> u4 = detail::u4_poly(c);
            Poly<Rat> c2 = cpoly * cpoly;
            Poly<Rat> psi5 = c2 * u4 * Rat::from_int(32) - p3 * p3 * p3;
            A = p3 * psi5;
            B = cpoly * u4 * u4 * Rat::from_int(16);
        }
        Poly<Rat> N = (xp - Poly<Rat>::constant(d, target.x)) * B - A;
        for (const auto& x0 : detail::rational_roots(N)) push_candidates_for_x(x0);
    }
    std::sort(res.solutions.begin(), res.solutions.end());
    res.full_torsion = static_cast<long long>(res.solutions.size()) == 1LL * n * n;
    return res;
}

}  // namespace skly
