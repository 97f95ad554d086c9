#pragma once

// Univariate dense polynomials, reduced rational functions and truncated
// Laurent series over an exact field scalar.

#include <optional>
#include <utility>
#include <vector>

#include "skly/error.hpp"
#include "skly/linalg.hpp"

namespace skly {

template <class K>
class Poly {
  public:
    using Desc = typename K::Desc;

    Poly() = default;
    explicit Poly(Desc d) : desc_(d) {}
    Poly(Desc d, std::vector<K> coeffs) : desc_(d), c_(std::move(coeffs)) { trim(); }

    static Poly constant(Desc d, const K& k) { return Poly(d, {k}); }
    static Poly x(Desc d) { return Poly(d, {d.zero(), d.one()}); }
    /// x - x0
    static Poly linear(Desc d, const K& x0) { return Poly(d, {-x0, d.one()}); }

    Desc desc() const { return desc_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero poly
    bool is_zero() const { return c_.empty(); }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return desc_.zero();
        return c_[i];
    }
    const std::vector<K>& coeffs() const { return c_; }
    K leading() const { return c_.empty() ? desc_.zero() : c_.back(); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }
    Poly operator+(const Poly& o) const {
        Poly r(desc_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), desc_.zero());
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(desc_);
        Poly r(desc_);
        r.c_.assign(c_.size() + o.c_.size() - 1, desc_.zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        r.trim();
        return r;
    }
    Poly operator*(const K& k) const {
        Poly r(*this);
        for (auto& v : r.c_) v *= k;
        r.trim();
        return r;
    }

    /// (quotient, remainder) with deg rem < deg divisor.
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw Error("polynomial division by zero");
        Poly q(desc_), r(*this);
        K lead_inv = d.leading().inverse();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            K f = r.leading() * lead_inv;
            if (q.degree() < k) q.c_.resize(k + 1, desc_.zero());
            q.c_[k] += f;
            for (int i = 0; i <= d.degree(); ++i) r.c_[i + k] -= f * d.c_[i];
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    K eval(const K& x) const {
        K acc = desc_.zero();
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (degree() < 1) return Poly(desc_);
        std::vector<K> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * desc_.make(static_cast<std::int64_t>(i));
        return Poly(desc_, std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Desc desc_;
    std::vector<K> c_;
};

template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto [q, r] = a.divrem(b);
        a = b;
        b = r;
    }
    return a.monic();
}

/// Rational function num/den, kept reduced with monic denominator.
template <class K>
class RatFunc {
  public:
    using Desc = typename K::Desc;

    RatFunc() = default;
    explicit RatFunc(Desc d) : num_(d), den_(Poly<K>::constant(d, d.one())) {}
    explicit RatFunc(const Poly<K>& num)
        : num_(num), den_(Poly<K>::constant(num.desc(), num.desc().one())) {}
    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

    static RatFunc constant(Desc d, const K& k) { return RatFunc(Poly<K>::constant(d, k)); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    Desc desc() const { return den_.desc(); }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }
    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
    RatFunc operator*(const K& k) const {
        RatFunc r(*this);
        r.num_ = r.num_ * k;
        return r;
    }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw Error("rational function division by zero");
        return RatFunc(num_ * o.den_, den_ * o.num_);
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Defined value at x, or nullopt when the reduced denominator vanishes.
    std::optional<K> eval(const K& x) const {
        K d = den_.eval(x);
        if (d.is_zero()) return std::nullopt;
        return num_.eval(x) / d;
    }

  private:
    void reduce() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>::constant(den_.desc(), den_.desc().one());
            return;
        }
        Poly<K> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divrem(g).first;
            den_ = den_.divrem(g).first;
        }
        K lead = den_.leading();
        if (!(lead == den_.desc().one())) {
            K inv = lead.inverse();
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Poly<K> num_, den_;
};

/// Exponent bound standing in for "exact to every order".
inline constexpr int kLaurentInf = 1 << 26;

/// Truncated Laurent series.  Invariants:
///   * coefficients below lo are exactly zero,
///   * coefficients in [lo, stored_hi) are held in c_,
///   * coefficients in [stored_hi, hi) are exactly zero,
///   * nothing is asserted at or beyond hi.
/// Exact series (polynomials, monomials) carry hi = kLaurentInf.
template <class K>
class Laurent {
  public:
    using Desc = typename K::Desc;

    Laurent() : lo_(0), hi_(0) {}
    Laurent(Desc d, int lo, int hi)
        : desc_(d), lo_(lo), hi_(std::max(lo, hi)), c_(static_cast<size_t>(hi_ - lo_), d.zero()) {}

    static Laurent constant(Desc d, const K& k) {
        Laurent s;
        s.desc_ = d;
        s.lo_ = 0;
        s.hi_ = kLaurentInf;
        s.c_.assign(1, k);
        return s;
    }
    static Laurent zero(Desc d) { return constant(d, d.zero()); }

    Desc desc() const { return desc_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    K coeff(int e) const {
        if (e >= hi_) throw Error("Laurent coefficient beyond validity");
        return get(e);
    }
    K& at(int e) {
        if (e < lo_ || e >= stored_hi()) throw Error("Laurent index out of range");
        return c_[static_cast<size_t>(e - lo_)];
    }

    /// First exponent with a nonzero coefficient, if any is visible.
    std::optional<int> valuation() const {
        for (int e = lo_; e < stored_hi(); ++e)
            if (!c_[static_cast<size_t>(e - lo_)].is_zero()) return e;
        return std::nullopt;
    }

    Laurent operator-() const {
        Laurent r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }
    Laurent operator+(const Laurent& o) const {
        int lo = std::min(lo_, o.lo_), hi = std::min(hi_, o.hi_);
        int shi = std::min(hi, std::max(stored_hi(), o.stored_hi()));
        Laurent r(desc_, lo, shi);
        for (int e = lo; e < shi; ++e) r.at(e) = get(e) + o.get(e);
        r.hi_ = hi;
        return r;
    }
    Laurent operator-(const Laurent& o) const { return *this + (-o); }
    Laurent operator*(const Laurent& o) const {
        int lo = clamp_exp(static_cast<long long>(lo_) + o.lo_);
        int hi = std::min(clamp_exp(static_cast<long long>(lo_) + o.hi_),
                          clamp_exp(static_cast<long long>(o.lo_) + hi_));
        int shi = std::min(hi, clamp_exp(static_cast<long long>(stored_hi()) + o.stored_hi() - 1));
        Laurent r(desc_, lo, shi);
        for (int i = lo_; i < stored_hi(); ++i) {
            K a = get(i);
            if (a.is_zero()) continue;
            for (int j = o.lo_; j < o.stored_hi() && i + j < shi; ++j) {
                K b = o.get(j);
                if (b.is_zero()) continue;
                r.at(i + j) += a * b;
            }
        }
        r.hi_ = hi;
        return r;
    }
    Laurent operator*(const K& k) const {
        Laurent r(*this);
        for (auto& v : r.c_) v *= k;
        return r;
    }

    /// Multiplicative inverse.  For s known on [val, hi) the inverse is
    /// exact on [-val, hi - 2*val).  Exact inputs must be monomials;
    /// anything else has an infinite inverse expansion and callers are
    /// expected to truncate first.
    Laurent inverse() const {
        auto v = valuation();
        if (!v) throw Error("Laurent inverse needs a visible leading term");
        const int val = *v;
        if (hi_ == kLaurentInf) {
            for (int e = val + 1; e < stored_hi(); ++e)
                if (!get(e).is_zero()) throw Error("Laurent inverse of exact non-monomial");
            Laurent r(desc_, -val, -val + 1);
            r.at(-val) = get(val).inverse();
            r.hi_ = kLaurentInf;
            return r;
        }
        const int rhi = clamp_exp(static_cast<long long>(hi_) - 2 * val);
        const int len = rhi + val;  // number of coefficients from -val
        if (len <= 0) throw Error("Laurent inverse: insufficient precision");
        K cinv = get(val).inverse();
        Laurent r(desc_, -val, -val + std::max(len, 0));
        std::vector<K> b(static_cast<size_t>(std::max(len, 1)), desc_.zero());
        b[0] = cinv;
        for (int m = 1; m < len; ++m) {
            K acc = desc_.zero();
            for (int k = 1; k <= m; ++k) acc += get(val + k) * b[static_cast<size_t>(m - k)];
            b[m] = -(acc * cinv);
        }
        for (int m = 0; m < len; ++m) r.at(-val + m) = b[static_cast<size_t>(m)];
        r.hi_ = rhi;
        return r;
    }
    Laurent operator/(const Laurent& o) const { return *this * o.inverse(); }

    bool known_through(int e) const { return e < hi_; }

  private:
    static int clamp_exp(long long e) {
        if (e > kLaurentInf) return kLaurentInf;
        if (e < -kLaurentInf) return -kLaurentInf;
        return static_cast<int>(e);
    }
    int stored_hi() const { return lo_ + static_cast<int>(c_.size()); }
    K get(int e) const {
        if (e < lo_ || e >= stored_hi()) return desc_.zero();
        return c_[static_cast<size_t>(e - lo_)];
    }

    Desc desc_;
    int lo_, hi_;
    std::vector<K> c_;
};

/// Evaluate a polynomial on a Laurent series (Horner).
template <class K>
Laurent<K> eval_poly(const Poly<K>& p, const Laurent<K>& x) {
    if (p.is_zero()) return Laurent<K>::zero(p.desc());
    Laurent<K> acc = Laurent<K>::constant(p.desc(), p.leading());
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = acc * x + Laurent<K>::constant(p.desc(), p.coeff(i));
    }
    return acc;
}

}  // namespace skly
