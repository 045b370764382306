#pragma once

#include "mtvlab/rational.hpp"
#include "mtvlab/value.hpp"

#include <vector>

namespace mtvlab {

// Exact Bernoulli number B_n from the recurrence sum_{k<=n} binom(n+1,k) B_k = 0.
Rational bernoulli(int n);

// Exact Euler number E_{2n} (argument is 2n, must be even and >= 0) from
// sum_{k=0..n} binom(2n,2k) E_{2k} = 0. usage_error on odd argument.
BigInt euler_number(int two_n);

// zeta(2a) = (-1)^{a+1} B_{2a} (2 pi)^{2a} / (2 (2a)!), exact.
PiMonomial zeta_even_exact(int two_a);

// eta(2a) = (1 - 2^{1-2a}) zeta(2a), exact.
PiMonomial eta_even_exact(int two_a);

// Numeric zeta(k), k >= 2. Direct summation with an Euler-Maclaurin tail
// correction; the reported estimate is the first omitted correction term.
ValueWithError zeta(int k, double tol);

// eta(0) = 1/2, eta(1) = ln 2, eta(k) = (1 - 2^{1-k}) zeta(k).
ValueWithError eta(int k, double tol);

// tbar(k) = 2^k sum (-1)^{n-1} (2n-1)^{-k}. Odd k via the Euler-number closed
// form (error 0 up to rounding); even k via the accelerated series.
ValueWithError tbar(int k, double tol);

// t_frak(1) = 0; t_frak(k) = (2^k - 1) zeta(k).
ValueWithError t_frak(int k);

// Immutable cache of the numeric families above plus the exact integer
// sequences. Built once on first use; reads are concurrency-safe.
class ConstantsTable {
public:
    static const ConstantsTable& instance();

    static constexpr int max_k = 16;

    double pi() const { return pi_; }
    double ln2() const { return ln2_; }
    double catalan() const { return catalan_; }
    double zeta(int k) const;    // 2 <= k <= max_k
    double eta(int k) const;     // 0 <= k <= max_k
    double t(int k) const;       // (1 - 2^{-k}) zeta(k), t(1) diverges -> usage_error
    double t_frak(int k) const;  // 1 <= k <= max_k
    double tbar(int k) const;    // 1 <= k <= max_k - 1
    const Rational& bernoulli(int n) const;  // 0 <= n <= 2*max_k
    const BigInt& euler(int two_n) const;    // 0 <= 2n <= max_k

private:
    ConstantsTable();
    double pi_, ln2_, catalan_;
    double zeta_[max_k + 1];
    double eta_[max_k + 1];
    double t_[max_k + 1];
    double t_frak_[max_k + 1];
    double tbar_[max_k + 1];
    std::vector<Rational> bernoulli_;
    std::vector<BigInt> euler_;
};

}  // namespace mtvlab
