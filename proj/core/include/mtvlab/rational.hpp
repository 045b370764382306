#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

namespace mtvlab {

using BigInt = boost::multiprecision::cpp_int;

// Reduced fraction over arbitrary-precision integers; denominator > 0 always.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    bool is_zero() const noexcept { return num_ == 0; }
    double to_double() const;
    // "p" when the denominator is 1, else "p/q"
    std::string str() const;

    static Rational binomial(int n, int k);
    static Rational pow2(int e);  // 2^e, e may be negative

private:
    void reduce();
    BigInt num_, den_;
};

// Exact value coeff * pi^pi_exponent. Addition is defined only between equal
// exponents (the callers all stay inside one exponent class).
struct PiMonomial {
    Rational coeff;
    int pi_exponent = 0;

    double to_double() const;
    // "p/q" for exponent 0, else "p/q * pi^e"
    std::string str() const;

    PiMonomial& operator+=(const PiMonomial& o);
    friend PiMonomial operator*(const PiMonomial& a, const PiMonomial& b) {
        return {a.coeff * b.coeff, a.pi_exponent + b.pi_exponent};
    }
    friend bool operator==(const PiMonomial& a, const PiMonomial& b) = default;
};

}  // namespace mtvlab
