#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <compare>

#include "kisin/error.hpp"

namespace kisin {

/// Exact rational number on int64, always normalized (gcd 1, den > 0).
/// Tree offsets and radii in this project have tiny denominators
/// (divisors of p^n + 1 or powers of p), so int64 with checked
/// intermediates is plenty.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    long long floor() const {
        if (num_ >= 0) return num_ / den_;
        return -(((-num_) + den_ - 1) / den_);
    }
    long long ceil() const { return -(-*this).floor(); }

    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                   checked(a.den_, b.den_));
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(checked(a.num_, b.num_), checked(a.den_, b.den_));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw Error("Rat: division by zero");
        return Rat(checked(a.num_, b.den_), checked(a.den_, b.num_));
    }

    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        return checked(a.num_, b.den_) <=> checked(b.num_, a.den_);
    }

    /// "n" for integers, "n/d" otherwise.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    static long long checked(long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw Error("Rat: int64 overflow");
        return r;
    }

    void normalize() {
        if (den_ == 0) throw Error("Rat: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_, den_;
};

inline Rat abs(const Rat& r) { return r < Rat(0) ? -r : r; }
inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace kisin
