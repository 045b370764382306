#include "mtvlab/rational.hpp"

#include "mtvlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace mtvlab {

namespace mp = boost::multiprecision;

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw usage_error("rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw usage_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    reduce();
    return *this;
}

double Rational::to_double() const {
    return static_cast<double>(mp::cpp_rational(num_, den_));
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return Rational(num, den);
}

Rational Rational::pow2(int e) {
    BigInt p = BigInt(1) << (e < 0 ? -e : e);
    return e >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

double PiMonomial::to_double() const {
    return coeff.to_double() * std::pow(M_PI, pi_exponent);
}

std::string PiMonomial::str() const {
    if (pi_exponent == 0) return coeff.str();
    return coeff.str() + " * pi^" + std::to_string(pi_exponent);
}

PiMonomial& PiMonomial::operator+=(const PiMonomial& o) {
    if (!coeff.is_zero() && !o.coeff.is_zero() && pi_exponent != o.pi_exponent)
        throw usage_error("adding pi-monomials of different exponent");
    if (coeff.is_zero()) pi_exponent = o.pi_exponent;
    coeff += o.coeff;
    return *this;
}

}  // namespace mtvlab
