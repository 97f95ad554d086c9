#pragma once

// Exact field scalars: the prime field F_p (p > 3) and the rationals.
// Every field element is immutable after construction and all arithmetic
// is exact; prime-field values are canonical residues in [0, p).

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "skly/error.hpp"

namespace skly {

class Fp;
class Rat;

/// Field descriptor for F_p.  Factory for elements of one fixed field.
struct FpDesc {
    std::uint64_t p = 0;

    FpDesc() = default;
    explicit FpDesc(std::uint64_t prime) : p(prime) {}

    inline Fp make(std::int64_t n) const;
    inline Fp zero() const;
    inline Fp one() const;
    std::string name() const { return "F" + std::to_string(p); }
    bool operator==(const FpDesc& o) const { return p == o.p; }
};

/// Prime-field element.  The modulus travels with the value; a
/// default-constructed element is an unattached zero that adopts the
/// modulus of its first nonzero-context operand.
class Fp {
  public:
    using Desc = FpDesc;

    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(p ? v % p : v), p_(p) {}

    static Fp from_int(std::int64_t n, std::uint64_t p) {
        std::int64_t r = n % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp operator+(const Fp& o) const {
        std::uint64_t p = join(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p) s -= p;
        return Fp(s, p);
    }
    Fp operator-(const Fp& o) const {
        std::uint64_t p = join(o);
        return Fp(v_ >= o.v_ ? v_ - o.v_ : v_ + p - o.v_, p);
    }
    Fp operator*(const Fp& o) const {
        std::uint64_t p = join(o);
        unsigned __int128 t = static_cast<unsigned __int128>(v_) * o.v_;
        return Fp(static_cast<std::uint64_t>(t % p), p);
    }
    Fp inverse() const {
        if (v_ == 0) throw Error("division by zero in F_p");
        // extended Euclid on (v, p)
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(v_);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return Fp(static_cast<std::uint64_t>(t), p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }

    /// Total order used only for deterministic tie-breaking.
    int cmp(const Fp& o) const { return v_ < o.v_ ? -1 : (v_ > o.v_ ? 1 : 0); }

    std::string str() const { return std::to_string(v_); }

    Desc desc() const { return FpDesc(p_); }

  private:
    std::uint64_t join(const Fp& o) const {
        if (p_ == 0) return o.p_;
        return p_;
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

inline Fp FpDesc::make(std::int64_t n) const { return Fp::from_int(n, p); }
inline Fp FpDesc::zero() const { return Fp(0, p); }
inline Fp FpDesc::one() const { return Fp(1, p); }

struct RatDesc;

/// Rational number backed by GMP.
class Rat {
  public:
    using Desc = RatDesc;

    Rat() : v_(0) {}
    Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    Rat(std::int64_t num, std::int64_t den) : v_(static_cast<long>(num), static_cast<long>(den)) {
        if (den == 0) throw Error("zero denominator");
        v_.canonicalize();
    }

    static Rat from_int(std::int64_t n) { return Rat(mpq_class(static_cast<long>(n))); }
    static Rat parse(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
        v.canonicalize();
        return Rat(v);
    }

    const mpq_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw Error("division by zero in Q");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat inverse() const {
        if (is_zero()) throw Error("division by zero in Q");
        return Rat(mpq_class(1 / v_));
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    int cmp(const Rat& o) const { return mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t()); }

    std::string str() const { return v_.get_str(); }

    inline Desc desc() const;

  private:
    mpq_class v_;
};

struct RatDesc {
    Rat make(std::int64_t n) const { return Rat::from_int(n); }
    Rat zero() const { return Rat(); }
    Rat one() const { return Rat::from_int(1); }
    std::string name() const { return "Q"; }
    bool operator==(const RatDesc&) const { return true; }
};

inline Rat::Desc Rat::desc() const { return RatDesc(); }

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace skly
