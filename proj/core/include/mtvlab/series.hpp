#pragma once

#include "mtvlab/index.hpp"
#include "mtvlab/value.hpp"

#include <span>
#include <vector>

namespace mtvlab {

// Finite nested prefix sums with interleaved <=/< constraints and alternating
// odd/even denominators, all-ones exponents, plus the odd harmonic numbers
// h_n^{(p)} = sum_{k<=n} (k - 1/2)^{-p} and their alternating variant.
//
// Zero conventions fall out of the recurrences: T_n({1}_{2m-1}) = 0 for n < m,
// and T_n({1}_{2m}) = S_n({1}_{2m-1}) = S_n({1}_{2m}) = 0 for n <= m.
// T_n(empty) = S_n(empty) = 1; h_0 = hbar_0 = 0.
struct HarmonicTables {
    int N = 0;
    int Jmax = 0;
    int Pmax = 0;
    // [j][n], 0 <= j <= Jmax, 0 <= n <= N
    std::vector<std::vector<double>> T_ones;
    std::vector<std::vector<double>> S_ones;
    // [p][n], 1 <= p <= Pmax (row 0 unused)
    std::vector<std::vector<double>> h;
    std::vector<std::vector<double>> hbar;

    double T(int n, int j) const { return T_ones[j][n]; }
    double S(int n, int j) const { return S_ones[j][n]; }
};

HarmonicTables build_tables(int N, int Jmax, int Pmax);

// Shared read-only instance (N = 16384, Jmax = 7, Pmax = 6), built on first use.
const HarmonicTables& shared_tables();

// Literal nested-loop evaluation of the same sums; the oracle the tables are
// tested against. Intended for n <= 30, j <= 5.
double brute_T(int n, int j);
double brute_S(int n, int j);

// Iterated pairwise averaging (Euler-transform style) over the last
// tail_window + 1 partial sums of an alternating series. value = the deepest
// average; error = |deepest - the previous depth| + 1e-15 |value| floor.
// usage_error when fewer than tail_window + 2 partials are supplied.
ValueWithError accelerate_alternating(std::span<const double> partials,
                                      int tail_window = 32);

// Term cap: MTVLAB_MAX_TERMS from the environment, else 2'000'000.
long long default_term_cap();

// Partial sums s_n = 2^r A_r(n), n = 0..N, of the signed series
//   2^r sum_{0<n_1<...<n_r} prod_j sigma_j^{n_j} (2 n_j - j)^{-k_j}
// (sigma_j = -1 iff barred) by the layered prefix DP
//   A_0(n) = 1,  A_j(n) = sum_{m<=n} sigma_j^m A_{j-1}(m-1) (2m-j)^{-k_j}.
std::vector<double> mtv_partial_sums(const SignedIndex& idx, long long N);

// s_N alone, bit-for-bit the truncation a literal nested loop produces.
double mtv_partial(const SignedIndex& idx, long long N);

// Full evaluator. Dispatch on the index shape:
//  - last entry unbarred (exponent >= 2): direct summation, analytic tail
//    bound 4 |term(N)| N / (k_r - 1), N doubling;
//  - last entry barred, no interior bars: accelerate_alternating closure;
//  - interior bars: the alternating factors multiply into a smooth tail
//    ~ log^j(n)/n that plain averaging cannot remove, so after de-oscillating
//    the partials we fit value + sum c_{jq} log^j(n)/n^q by least squares at
//    geometric checkpoints and read off the constant.
// usage_error on divergent indices; convergence_error (carrying the best
// value/estimate) if the term cap stops the doubling before tol is met.
// max_terms = 0 means default_term_cap().
ValueWithError eval_signed_mtv(const SignedIndex& idx, double tol,
                               long long max_terms = 0);

// Level-2 polylog at real z: 2^r sum z^{m_r} / prod m_j^{k_j} over the
// parity-constrained chain m_j = 2 n_j - j. Needs |z| < 1, or z = 1 with
// last exponent >= 2 (the z = 1 value is the unsigned series, evaluated by
// eval_signed_mtv). Geometric tail bound with ratio z^2 for |z| < 1.
ValueWithError eval_a(const std::vector<int>& ks, double z, double tol,
                      long long max_terms = 0);

}  // namespace mtvlab
