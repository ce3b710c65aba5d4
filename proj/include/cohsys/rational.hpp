#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "cohsys/errors.hpp"

namespace cohsys {

// Exact rational number backed by GMP. Always kept in canonical form:
// fully reduced, denominator > 0.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
    Rat(long long num, long long den);
    explicit Rat(mpq_class q);
    explicit Rat(const mpz_class& num, const mpz_class& den);

    // Accepts "p" or "p/q" with optional leading '-'; q > 0 after reduction.
    // Returns nullopt on malformed input or zero denominator.
    static std::optional<Rat> parse(std::string_view s);

    const mpq_class& raw() const { return v_; }
    const mpz_class num() const { return v_.get_num(); }
    const mpz_class den() const { return v_.get_den(); }

    bool is_integer() const { return v_.get_den() == 1; }
    int sgn() const { return ::sgn(v_); }

    // Renders "p/q", or just "p" for integers.
    std::string str() const;

    // Conversion for report fields known to be small; throws BoundsError if
    // the value does not fit.
    long long num_ll() const;
    long long den_ll() const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    double approx() const { return v_.get_d(); }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

// Helpers for the 128-bit integer fast path.
mpz_class mpz_from_i128(__int128 v);
Rat rat_from_i128(__int128 num, __int128 den);

}  // namespace cohsys
