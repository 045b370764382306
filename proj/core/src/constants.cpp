#include "mtvlab/constants.hpp"

#include "mtvlab/errors.hpp"
#include "mtvlab/series.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace mtvlab {

namespace {

// B_n by the defining recurrence: sum_{k=0}^{n} binom(n+1,k) B_k = 0, B_0 = 1.
std::vector<Rational> bernoulli_upto(int n) {
    std::vector<Rational> b;
    b.reserve(n + 1);
    b.push_back(Rational(1));
    for (int m = 1; m <= n; ++m) {
        Rational acc(0);
        for (int k = 0; k < m; ++k)
            acc += Rational::binomial(m + 1, k) * b[k];
        b.push_back(-acc / Rational(m + 1));
    }
    return b;
}

std::vector<BigInt> euler_upto(int two_n) {
    std::vector<BigInt> e;  // e[n] = E_{2n}
    e.push_back(BigInt(1));
    for (int n = 1; 2 * n <= two_n; ++n) {
        Rational acc(0);
        for (int k = 0; k < n; ++k)
            acc += Rational::binomial(2 * n, 2 * k) * Rational(e[k]);
        Rational en = -acc;
        e.push_back(en.num());  // integer by construction
    }
    return e;
}

}  // namespace

Rational bernoulli(int n) {
    if (n < 0) throw usage_error("bernoulli: n must be >= 0");
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cache.size()) <= n) cache = bernoulli_upto(n + 8);
    return cache[n];
}

BigInt euler_number(int two_n) {
    if (two_n < 0 || two_n % 2 != 0)
        throw usage_error("euler_number: argument must be an even integer >= 0");
    static std::mutex mu;
    static std::vector<BigInt> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cache.size()) <= two_n / 2) cache = euler_upto(two_n + 8);
    return cache[two_n / 2];
}

PiMonomial zeta_even_exact(int two_a) {
    if (two_a < 2 || two_a % 2 != 0)
        throw usage_error("zeta_even_exact: argument must be an even integer >= 2");
    int a = two_a / 2;
    Rational fact(1);
    for (int i = 2; i <= two_a; ++i) fact *= Rational(i);
    Rational coeff = bernoulli(two_a) * Rational::pow2(two_a) / (Rational(2) * fact);
    if (a % 2 == 0) coeff = -coeff;  // (-1)^{a+1}
    return {coeff, two_a};
}

PiMonomial eta_even_exact(int two_a) {
    PiMonomial z = zeta_even_exact(two_a);
    // 1 - 2^{1-2a} = (2^{2a-1} - 1) / 2^{2a-1}
    Rational f = (Rational::pow2(two_a - 1) - Rational(1)) / Rational::pow2(two_a - 1);
    z.coeff *= f;
    return z;
}

ValueWithError zeta(int k, double tol) {
    if (k < 2) throw usage_error("zeta: k must be >= 2");
    // Direct summation to N, then the Euler-Maclaurin tail:
    //   integral + half-term + B_2, B_4 derivative corrections.
    // The first omitted correction bounds the remainder (derivatives of n^-k
    // alternate in sign), so this is an honest tail bound.
    long long N = 16;
    for (;;) {
        double dN = static_cast<double>(N);
        double omitted = std::pow(dN, -k - 5) * k * (k + 1.0) * (k + 2.0) *
                         (k + 3.0) * (k + 4.0) / 30240.0;
        if (omitted <= tol * 0.25 || N >= (1 << 20)) {
            double s = 0.0;
            for (long long n = N - 1; n >= 1; --n) s += std::pow(static_cast<double>(n), -k);
            s += std::pow(dN, 1.0 - k) / (k - 1.0);      // integral from N
            s += std::pow(dN, -k) * 0.5;                 // half term at N
            s += k * std::pow(dN, -k - 1.0) / 12.0;      // B_2 correction
            s -= k * (k + 1.0) * (k + 2.0) * std::pow(dN, -k - 3.0) / 720.0;
            return {s, omitted + 4e-16 * std::fabs(s), N, Method::direct_tail};
        }
        N *= 2;
    }
}

ValueWithError eta(int k, double tol) {
    if (k < 0) throw usage_error("eta: k must be >= 0");
    if (k == 0) return {0.5, 0.0, 0, Method::closed_form};
    if (k == 1) return {std::log(2.0), 0.0, 0, Method::closed_form};
    ValueWithError z = zeta(k, tol);
    double f = 1.0 - std::pow(2.0, 1.0 - k);
    return {f * z.value, f * z.error_estimate, z.terms_used, z.method};
}

ValueWithError tbar(int k, double tol) {
    if (k < 1) throw usage_error("tbar: k must be >= 1");
    if (k % 2 == 1) {
        // (-1)^m E_{2m} pi^{2m+1} / (2 (2m)!) with m = (k-1)/2
        int m = (k - 1) / 2;
        double e2m = static_cast<double>(euler_number(2 * m));
        double fact = 1.0;
        for (int i = 2; i <= 2 * m; ++i) fact *= i;
        double v = e2m * std::pow(M_PI, k) / (2.0 * fact);
        if (m % 2 == 1) v = -v;
        return {v, 4e-16 * std::fabs(v), 0, Method::closed_form};
    }
    long long N = 2000;
    double last = 0.0;
    bool have_last = false;
    for (;;) {
        std::vector<double> partials(N);
        double s = 0.0;
        double scale = std::pow(2.0, k);
        for (long long n = 1; n <= N; ++n) {
            double term = scale / std::pow(2.0 * n - 1.0, k);
            s += (n % 2 == 1) ? term : -term;
            partials[n - 1] = s;
        }
        ValueWithError r = accelerate_alternating(partials, 32);
        r.terms_used = N;
        if (have_last) r.error_estimate = std::max(r.error_estimate, 0.25 * std::fabs(r.value - last));
        if (r.error_estimate <= tol || N >= (1 << 20)) return r;
        have_last = true;
        last = r.value;
        N *= 2;
    }
}

ValueWithError t_frak(int k) {
    if (k < 1) throw usage_error("t_frak: k must be >= 1");
    if (k == 1) return {0.0, 0.0, 0, Method::closed_form};
    ValueWithError z = zeta(k, 1e-15);
    double f = std::pow(2.0, k) - 1.0;
    return {f * z.value, f * z.error_estimate, z.terms_used, Method::closed_form};
}

const ConstantsTable& ConstantsTable::instance() {
    static ConstantsTable table;
    return table;
}

ConstantsTable::ConstantsTable() {
    pi_ = M_PI;
    ln2_ = std::log(2.0);
    bernoulli_ = bernoulli_upto(2 * max_k);
    euler_ = euler_upto(max_k);
    zeta_[0] = zeta_[1] = 0.0;
    eta_[0] = 0.5;
    eta_[1] = ln2_;
    t_[0] = t_[1] = 0.0;
    t_frak_[0] = 0.0;
    t_frak_[1] = 0.0;
    tbar_[0] = 0.0;
    for (int k = 2; k <= max_k; ++k) {
        zeta_[k] = mtvlab::zeta(k, 1e-14).value;
        eta_[k] = (1.0 - std::pow(2.0, 1.0 - k)) * zeta_[k];
        t_[k] = (1.0 - std::pow(2.0, -k)) * zeta_[k];
        t_frak_[k] = (std::pow(2.0, k) - 1.0) * zeta_[k];
    }
    for (int k = 1; k < max_k; ++k) tbar_[k] = mtvlab::tbar(k, 1e-13).value;
    tbar_[max_k] = 0.0;
    catalan_ = tbar_[2] / 4.0;
}

double ConstantsTable::zeta(int k) const {
    if (k < 2 || k > max_k) throw usage_error("ConstantsTable::zeta: k out of range");
    return zeta_[k];
}

double ConstantsTable::eta(int k) const {
    if (k < 0 || k > max_k) throw usage_error("ConstantsTable::eta: k out of range");
    return eta_[k];
}

double ConstantsTable::t(int k) const {
    if (k < 2 || k > max_k) throw usage_error("ConstantsTable::t: k out of range");
    return t_[k];
}

double ConstantsTable::t_frak(int k) const {
    if (k < 1 || k > max_k) throw usage_error("ConstantsTable::t_frak: k out of range");
    return t_frak_[k];
}

double ConstantsTable::tbar(int k) const {
    if (k < 1 || k >= max_k) throw usage_error("ConstantsTable::tbar: k out of range");
    return tbar_[k];
}

const Rational& ConstantsTable::bernoulli(int n) const {
    if (n < 0 || n > 2 * max_k) throw usage_error("ConstantsTable::bernoulli: n out of range");
    return bernoulli_[n];
}

const BigInt& ConstantsTable::euler(int two_n) const {
    if (two_n < 0 || two_n % 2 != 0 || two_n > max_k)
        throw usage_error("ConstantsTable::euler: argument out of range");
    return euler_[two_n / 2];
}

}  // namespace mtvlab
