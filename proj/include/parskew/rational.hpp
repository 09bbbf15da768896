#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "parskew/errors.hpp"

namespace parskew {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always canonical: denominator > 0, gcd(num, den) = 1.
/// Every operation is exact; there is no rounding anywhere in the library.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}  // NOLINT: implicit by design, scalars appear everywhere
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw InvalidElement("rational with zero denominator");
        v_ = cpp_rat(num) / cpp_rat(den);  // normalizes sign and gcd
    }

    static Rational parse(const std::string& s) {
        auto bad = [&]() -> ParseError { return ParseError("malformed rational '" + s + "'"); };
        if (s.empty()) throw bad();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(s));
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den <= 0) throw bad();
            return Rational(num, den);
        } catch (const std::runtime_error&) {
            throw bad();
        }
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return den() == 1; }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    Rational operator-() const { return Rational(cpp_rat(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw InvalidElement("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using cpp_rat = boost::multiprecision::cpp_rational;
    explicit Rational(cpp_rat v) : v_(std::move(v)) {}
    cpp_rat v_;
};

inline Rational rat(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

}  // namespace parskew
