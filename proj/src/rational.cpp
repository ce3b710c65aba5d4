#include "cohsys/rational.hpp"

#include <cctype>
#include <ostream>

namespace cohsys {

Rat::Rat(long long num, long long den) {
    if (den == 0) throw ValidationError("rational: denominator must be nonzero");
    v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    v_.canonicalize();
}

Rat::Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw ValidationError("rational: denominator must be nonzero");
    v_ = mpq_class(num) / mpq_class(den);
    v_.canonicalize();
}

std::optional<Rat> Rat::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '-' || s[pos] == '+') {
        neg = (s[pos] == '-');
        ++pos;
    }
    auto read_digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out += s[pos++];
        return pos > start;
    };
    std::string num_s;
    if (!read_digits(num_s)) return std::nullopt;
    std::string den_s = "1";
    if (pos < s.size()) {
        if (s[pos] != '/') return std::nullopt;
        ++pos;
        den_s.clear();
        if (!read_digits(den_s)) return std::nullopt;
        if (pos != s.size()) return std::nullopt;
    }
    mpz_class num(num_s, 10);
    mpz_class den(den_s, 10);
    if (den == 0) return std::nullopt;
    if (neg) num = -num;
    return Rat(num, den);
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long long Rat::num_ll() const {
    if (!v_.get_num().fits_slong_p()) throw BoundsError("rational numerator exceeds 64-bit range");
    return v_.get_num().get_si();
}

long long Rat::den_ll() const {
    if (!v_.get_den().fits_slong_p()) throw BoundsError("rational denominator exceeds 64-bit range");
    return v_.get_den().get_si();
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.v_ == 0) throw ValidationError("rational: division by zero");
    return Rat(mpq_class(a.v_ / b.v_));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.v_ == 0) throw ValidationError("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class out = (hi << 64) + lo;
    return neg ? mpz_class(-out) : out;
}

Rat rat_from_i128(__int128 num, __int128 den) {
    return Rat(mpz_from_i128(num), mpz_from_i128(den));
}

}  // namespace cohsys
